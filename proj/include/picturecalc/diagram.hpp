#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"
#include "error.hpp"
#include "presentation.hpp"

namespace picturecalc {

  //! The pair (presentation, coefficient system) every diagram is drawn over.
  struct Signature {
    Presentation      presentation;
    CoefficientSystem coefficients;

    friend bool operator==(Signature const&, Signature const&) = default;
  };

  using SignaturePtr = std::shared_ptr<Signature const>;

  [[nodiscard]] inline SignaturePtr make_signature(Presentation      p,
                                                   CoefficientSystem c) {
    if (c.size() != p.number_of_letters()) {
      throw Error("coefficient system must assign one group per letter");
    }
    return std::make_shared<Signature const>(
        Signature{std::move(p), std::move(c)});
  }

  [[nodiscard]] inline SignaturePtr make_signature(Presentation p) {
    auto n = p.number_of_letters();
    return make_signature(std::move(p), CoefficientSystem::trivial(n));
  }

  [[nodiscard]] inline bool same_signature(SignaturePtr const& a,
                                           SignaturePtr const& b) {
    return a == b || (a && b && *a == *b);
  }

  using WireId       = std::uint32_t;
  using TransistorId = std::uint32_t;

  enum class Site : std::uint8_t {
    frame_top,
    frame_bottom,
    transistor_top,
    transistor_bottom
  };

  //! Where one end of a wire is attached.  `transistor` is meaningful only
  //! for the two transistor sites.
  struct Attachment {
    Site         site       = Site::frame_top;
    TransistorId transistor = 0;
    std::uint32_t index     = 0;

    [[nodiscard]] bool on_transistor() const noexcept {
      return site == Site::transistor_top || site == Site::transistor_bottom;
    }

    friend bool operator==(Attachment const&, Attachment const&) = default;
  };

  struct Wire {
    LetterId     label = 0;
    GroupElement coeff;
    Attachment   top_end;     // frame_top or transistor_bottom
    Attachment   bottom_end;  // frame_bottom or transistor_top
  };

  struct Transistor {
    RelationId          relation = 0;
    bool                positive = true;  // top spells the relation's lhs
    std::vector<WireId> top;
    std::vector<WireId> bottom;
  };

  struct LabelledLetter {
    LetterId     letter;
    GroupElement element;

    friend bool operator==(LabelledLetter const&, LabelledLetter const&)
        = default;
  };

  using LabelledWord = std::vector<LabelledLetter>;

  //! Raw combinatorial data of a diagram.
  struct DiagramParts {
    SignaturePtr            signature;
    std::vector<Wire>       wires;
    std::vector<Transistor> transistors;
    std::vector<WireId>     top_ports;
    std::vector<WireId>     bottom_ports;
    bool                    annular = false;
  };

  //! Lists every broken invariant of the given data; empty iff it describes
  //! a diagram.
  [[nodiscard]] std::vector<std::string>
  diagram_violations(DiagramParts const& d);

  //! An immutable braided diagram over a signature.
  class Diagram {
   public:
    //! Validates; throws InvalidDiagram.
    explicit Diagram(DiagramParts parts) : _p(std::move(parts)) {
      auto v = diagram_violations(_p);
      if (!v.empty()) {
        throw InvalidDiagram("invalid diagram: " + v.front());
      }
    }

    //! For data built by the library's own operations.
    static Diagram trusted(DiagramParts parts) {
      return Diagram(std::move(parts), 0);
    }

    [[nodiscard]] DiagramParts const& parts() const noexcept {
      return _p;
    }
    [[nodiscard]] SignaturePtr const& signature() const noexcept {
      return _p.signature;
    }
    [[nodiscard]] Presentation const& presentation() const noexcept {
      return _p.signature->presentation;
    }
    [[nodiscard]] CoefficientSystem const& coefficients() const noexcept {
      return _p.signature->coefficients;
    }
    [[nodiscard]] std::vector<Wire> const& wires() const noexcept {
      return _p.wires;
    }
    [[nodiscard]] std::vector<Transistor> const& transistors() const noexcept {
      return _p.transistors;
    }
    [[nodiscard]] Wire const& wire(WireId w) const {
      return _p.wires.at(w);
    }
    [[nodiscard]] Transistor const& transistor(TransistorId t) const {
      return _p.transistors.at(t);
    }
    [[nodiscard]] std::vector<WireId> const& top_ports() const noexcept {
      return _p.top_ports;
    }
    [[nodiscard]] std::vector<WireId> const& bottom_ports() const noexcept {
      return _p.bottom_ports;
    }
    [[nodiscard]] bool annular() const noexcept {
      return _p.annular;
    }
    [[nodiscard]] std::size_t number_of_transistors() const noexcept {
      return _p.transistors.size();
    }
    [[nodiscard]] std::size_t number_of_nontrivial_wires() const noexcept {
      std::size_t n = 0;
      for (auto const& w : _p.wires) {
        n += w.coeff.is_identity() ? 0 : 1;
      }
      return n;
    }

    [[nodiscard]] Word top_word() const {
      return letters_of(_p.top_ports);
    }
    [[nodiscard]] Word bottom_word() const {
      return letters_of(_p.bottom_ports);
    }
    [[nodiscard]] LabelledWord top_labelled() const {
      return labelled_of(_p.top_ports);
    }
    [[nodiscard]] LabelledWord bottom_labelled() const {
      return labelled_of(_p.bottom_ports);
    }
    [[nodiscard]] Word letters_of(std::vector<WireId> const& ws) const {
      Word out;
      out.reserve(ws.size());
      for (auto w : ws) {
        out.push_back(_p.wires[w].label);
      }
      return out;
    }

   private:
    Diagram(DiagramParts parts, int) : _p(std::move(parts)) {}

    [[nodiscard]] LabelledWord labelled_of(std::vector<WireId> const& ws) const {
      LabelledWord out;
      out.reserve(ws.size());
      for (auto w : ws) {
        out.push_back({_p.wires[w].label, _p.wires[w].coeff});
      }
      return out;
    }

    DiagramParts _p;
  };

  struct Boundaries {
    LabelledWord top;
    LabelledWord bottom;
    Word         top_letters;
    Word         bottom_letters;
  };

  [[nodiscard]] inline Boundaries boundaries(Diagram const& d) {
    return {d.top_labelled(), d.bottom_labelled(), d.top_word(), d.bottom_word()};
  }

  ////////////////////////////////////////////////////////////////////////
  // Validation
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    //! Kahn's algorithm over "t1 lies directly above t2" edges.
    [[nodiscard]] inline bool
    transistors_acyclic(std::vector<Wire> const&       wires,
                        std::size_t                    nt) {
      std::vector<std::vector<TransistorId>> below(nt);
      std::vector<std::size_t>               indegree(nt, 0);
      for (auto const& w : wires) {
        if (w.top_end.site == Site::transistor_bottom
            && w.bottom_end.site == Site::transistor_top) {
          below[w.top_end.transistor].push_back(w.bottom_end.transistor);
          ++indegree[w.bottom_end.transistor];
        }
      }
      std::vector<TransistorId> stack;
      for (TransistorId t = 0; t < nt; ++t) {
        if (indegree[t] == 0) {
          stack.push_back(t);
        }
      }
      std::size_t seen = 0;
      while (!stack.empty()) {
        auto t = stack.back();
        stack.pop_back();
        ++seen;
        for (auto u : below[t]) {
          if (--indegree[u] == 0) {
            stack.push_back(u);
          }
        }
      }
      return seen == nt;
    }
  }  // namespace detail

  inline std::vector<std::string> diagram_violations(DiagramParts const& d) {
    std::vector<std::string> out;
    if (!d.signature) {
      out.emplace_back("no signature");
      return out;
    }
    auto const& pres   = d.signature->presentation;
    auto const& coeffs = d.signature->coefficients;
    auto const  nw     = d.wires.size();
    auto const  nt     = d.transistors.size();
    if (nw == 0) {
      out.emplace_back("a diagram needs at least one wire");
    }
    auto in_range = [&](Attachment const& a) {
      return !a.on_transistor() || a.transistor < nt;
    };
    for (std::size_t i = 0; i < nw; ++i) {
      auto const& w  = d.wires[i];
      auto        id = "wire " + std::to_string(i);
      if (w.label >= pres.number_of_letters()) {
        out.push_back(id + " has an undeclared label");
        continue;
      }
      if (!coeffs[w.label].contains(w.coeff)) {
        out.push_back(id + " carries an element outside its letter's group");
      }
      if (w.top_end.site != Site::frame_top
          && w.top_end.site != Site::transistor_bottom) {
        out.push_back(id + " has its top end on a bottom-facing site");
      }
      if (w.bottom_end.site != Site::frame_bottom
          && w.bottom_end.site != Site::transistor_top) {
        out.push_back(id + " has its bottom end on a top-facing site");
      }
      if (!in_range(w.top_end) || !in_range(w.bottom_end)) {
        out.push_back(id + " refers to a missing transistor");
        continue;
      }
      auto check_slot = [&](Attachment const& a) {
        WireId const* slot = nullptr;
        switch (a.site) {
          case Site::frame_top:
            if (a.index < d.top_ports.size()) {
              slot = &d.top_ports[a.index];
            }
            break;
          case Site::frame_bottom:
            if (a.index < d.bottom_ports.size()) {
              slot = &d.bottom_ports[a.index];
            }
            break;
          case Site::transistor_top:
            if (a.index < d.transistors[a.transistor].top.size()) {
              slot = &d.transistors[a.transistor].top[a.index];
            }
            break;
          case Site::transistor_bottom:
            if (a.index < d.transistors[a.transistor].bottom.size()) {
              slot = &d.transistors[a.transistor].bottom[a.index];
            }
            break;
        }
        if (slot == nullptr || *slot != i) {
          out.push_back(id + " is not listed at the slot it attaches to");
        }
      };
      check_slot(w.top_end);
      check_slot(w.bottom_end);
    }
    auto check_list = [&](std::vector<WireId> const& list,
                          Site                       site,
                          TransistorId               t,
                          std::string const&         what) {
      for (std::size_t k = 0; k < list.size(); ++k) {
        if (list[k] >= nw) {
          out.push_back(what + " lists a missing wire");
          return;
        }
        auto const& w = d.wires[list[k]];
        auto const& a = (site == Site::frame_top || site == Site::transistor_bottom)
                            ? w.top_end
                            : w.bottom_end;
        bool ok = a.site == site && a.index == k
                  && (!a.on_transistor() || a.transistor == t);
        if (!ok) {
          out.push_back(what + " slot " + std::to_string(k)
                        + " disagrees with its wire");
        }
      }
    };
    check_list(d.top_ports, Site::frame_top, 0, "top frame");
    check_list(d.bottom_ports, Site::frame_bottom, 0, "bottom frame");
    for (TransistorId t = 0; t < nt; ++t) {
      auto const& tr = d.transistors[t];
      auto        id = "transistor " + std::to_string(t);
      if (tr.relation >= pres.number_of_relations()) {
        out.push_back(id + " refers to a missing relation");
        continue;
      }
      check_list(tr.top, Site::transistor_top, t, id + " top");
      check_list(tr.bottom, Site::transistor_bottom, t, id + " bottom");
      auto const& want_top    = pres.top_side(tr.relation, tr.positive);
      auto const& want_bottom = pres.bottom_side(tr.relation, tr.positive);
      auto        labels      = [&](std::vector<WireId> const& ws) {
        Word out_w;
        for (auto w : ws) {
          out_w.push_back(w < nw ? d.wires[w].label : LetterId(-1));
        }
        return out_w;
      };
      if (labels(tr.top) != want_top) {
        out.push_back(id + " top labels do not spell its relation side");
      }
      if (labels(tr.bottom) != want_bottom) {
        out.push_back(id + " bottom labels do not spell its relation side");
      }
    }
    if (out.empty() && !detail::transistors_acyclic(d.wires, nt)) {
      out.emplace_back("the transistor order has a cycle");
    }
    return out;
  }

  enum class Geometry : std::uint8_t { braided, annular, planar };

  [[nodiscard]] inline char const* to_string(Geometry g) {
    switch (g) {
      case Geometry::braided:
        return "braided";
      case Geometry::annular:
        return "annular";
      case Geometry::planar:
        return "planar";
    }
    return "";
  }

}  // namespace picturecalc
