#pragma once

#include <numeric>
#include <span>
#include <vector>

#include "diagram.hpp"

namespace picturecalc {

  namespace detail {
    inline void require_nonempty(std::size_t n) {
      if (n == 0) {
        throw Error("boundary words must be nonempty");
      }
    }

    //! Appends a frame-to-frame wire to the given parts.
    inline WireId add_through_wire(DiagramParts& p,
                                   LetterId      label,
                                   GroupElement  coeff) {
      auto id = static_cast<WireId>(p.wires.size());
      p.wires.push_back(
          {label,
           std::move(coeff),
           {Site::frame_top, 0, static_cast<std::uint32_t>(p.top_ports.size())},
           {Site::frame_bottom, 0, static_cast<std::uint32_t>(p.bottom_ports.size())}});
      p.top_ports.push_back(id);
      p.bottom_ports.push_back(id);
      return id;
    }

    inline Attachment shift(Attachment a, std::uint32_t transistors) {
      if (a.on_transistor()) {
        a.transistor += transistors;
      }
      return a;
    }
  }  // namespace detail

  //! Identity diagram on a labelled word.
  [[nodiscard]] inline Diagram eps(SignaturePtr sig, LabelledWord const& w) {
    detail::require_nonempty(w.size());
    DiagramParts p;
    for (auto const& [a, g] : w) {
      if (a >= sig->presentation.number_of_letters()) {
        throw Error("undeclared letter in labelled word");
      }
      if (!sig->coefficients[a].contains(g)) {
        throw MismatchError("element outside the letter's coefficient group");
      }
      detail::add_through_wire(p, a, g);
    }
    p.signature = std::move(sig);
    return Diagram::trusted(std::move(p));
  }

  //! Identity diagram on a word, all coefficients trivial.
  [[nodiscard]] inline Diagram eps(SignaturePtr sig, Word const& w) {
    detail::require_nonempty(w.size());
    LabelledWord lw;
    for (auto a : w) {
      if (a >= sig->presentation.number_of_letters()) {
        throw Error("undeclared letter in word");
      }
      lw.push_back({a, sig->coefficients[a].identity()});
    }
    return eps(std::move(sig), lw);
  }

  //! The planar diagram eps(a) + T + eps(b) with T labelled by `rel`; a
  //! positive transistor has the relation's lhs on top.
  [[nodiscard]] inline Diagram atom_transistor(SignaturePtr sig,
                                               Word const&  a,
                                               RelationId   rel,
                                               bool         positive,
                                               Word const&  b) {
    auto const& pres = sig->presentation;
    auto const& top  = pres.top_side(rel, positive);
    auto const& bot  = pres.bottom_side(rel, positive);
    DiagramParts p;
    auto identity = [&](LetterId x) {
      if (x >= pres.number_of_letters()) {
        throw Error("undeclared letter in padding word");
      }
      return sig->coefficients[x].identity();
    };
    for (auto x : a) {
      detail::add_through_wire(p, x, identity(x));
    }
    Transistor tr{rel, positive, {}, {}};
    for (std::size_t k = 0; k < top.size(); ++k) {
      auto id = static_cast<WireId>(p.wires.size());
      p.wires.push_back(
          {top[k],
           identity(top[k]),
           {Site::frame_top, 0, static_cast<std::uint32_t>(p.top_ports.size())},
           {Site::transistor_top, 0, static_cast<std::uint32_t>(k)}});
      p.top_ports.push_back(id);
      tr.top.push_back(id);
    }
    for (std::size_t k = 0; k < bot.size(); ++k) {
      auto id = static_cast<WireId>(p.wires.size());
      p.wires.push_back({bot[k],
                         identity(bot[k]),
                         {Site::transistor_bottom, 0, static_cast<std::uint32_t>(k)},
                         {Site::frame_bottom,
                          0,
                          static_cast<std::uint32_t>(p.bottom_ports.size())}});
      p.bottom_ports.push_back(id);
      tr.bottom.push_back(id);
    }
    p.transistors.push_back(std::move(tr));
    for (auto x : b) {
      detail::add_through_wire(p, x, identity(x));
    }
    p.signature = std::move(sig);
    return Diagram::trusted(std::move(p));
  }

  //! Wire i runs from top port i to bottom port perm[i].
  [[nodiscard]] inline Diagram atom_permutation(SignaturePtr                 sig,
                                                Word const&                  w,
                                                std::span<std::size_t const> perm) {
    detail::require_nonempty(w.size());
    if (perm.size() != w.size()) {
      throw Error("permutation size differs from the word length");
    }
    std::vector<bool> hit(w.size(), false);
    for (auto j : perm) {
      if (j >= w.size() || hit[j]) {
        throw Error("not a bijection");
      }
      hit[j] = true;
    }
    DiagramParts p;
    p.bottom_ports.resize(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (w[i] >= sig->presentation.number_of_letters()) {
        throw Error("undeclared letter in word");
      }
      auto id = static_cast<WireId>(i);
      p.wires.push_back({w[i],
                         sig->coefficients[w[i]].identity(),
                         {Site::frame_top, 0, static_cast<std::uint32_t>(i)},
                         {Site::frame_bottom, 0, static_cast<std::uint32_t>(perm[i])}});
      p.top_ports.push_back(id);
      p.bottom_ports[perm[i]] = id;
    }
    p.signature = std::move(sig);
    return Diagram::trusted(std::move(p));
  }

  //! eps(w) with coefficient g on wire i.
  [[nodiscard]] inline Diagram atom_linear(SignaturePtr        sig,
                                           Word const&         w,
                                           std::size_t         i,
                                           GroupElement const& g) {
    if (i >= w.size()) {
      throw Error("wire position out of range");
    }
    if (g.is_identity()) {
      throw Error("a linear atom needs a nontrivial element");
    }
    LabelledWord lw;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (w[k] >= sig->presentation.number_of_letters()) {
        throw Error("undeclared letter in word");
      }
      lw.push_back({w[k], k == i ? g : sig->coefficients[w[k]].identity()});
    }
    return eps(std::move(sig), lw);
  }

  //! Glues d2 under d1, merging bottom port k of d1 with top port k of d2;
  //! a merged wire carries d1's coefficient times d2's.  Not reduced.
  [[nodiscard]] inline Diagram concat(Diagram const& d1, Diagram const& d2) {
    if (!same_signature(d1.signature(), d2.signature())) {
      throw MismatchError("diagrams over different signatures");
    }
    if (d1.bottom_word() != d2.top_word()) {
      throw MismatchError("bottom word of the upper diagram differs from the "
                          "top word of the lower one");
    }
    auto const&  a = d1.parts();
    auto const&  b = d2.parts();
    DiagramParts p = a;
    p.annular      = a.annular || b.annular;
    auto const nt1 = static_cast<std::uint32_t>(a.transistors.size());

    std::vector<WireId> map(b.wires.size(), 0);
    for (std::size_t k = 0; k < b.top_ports.size(); ++k) {
      map[b.top_ports[k]] = a.bottom_ports[k];
    }
    for (WireId w = 0; w < b.wires.size(); ++w) {
      if (b.wires[w].top_end.site != Site::frame_top) {
        map[w] = static_cast<WireId>(p.wires.size());
        auto nw       = b.wires[w];
        nw.top_end    = detail::shift(nw.top_end, nt1);
        nw.bottom_end = detail::shift(nw.bottom_end, nt1);
        p.wires.push_back(std::move(nw));
      }
    }
    for (std::size_t k = 0; k < b.top_ports.size(); ++k) {
      auto const& lower  = b.wires[b.top_ports[k]];
      auto&       merged = p.wires[a.bottom_ports[k]];
      merged.coeff       = merged.coeff * lower.coeff;
      merged.bottom_end  = detail::shift(lower.bottom_end, nt1);
    }
    for (auto const& t : b.transistors) {
      Transistor nt{t.relation, t.positive, {}, {}};
      for (auto w : t.top) {
        nt.top.push_back(map[w]);
      }
      for (auto w : t.bottom) {
        nt.bottom.push_back(map[w]);
      }
      p.transistors.push_back(std::move(nt));
    }
    p.bottom_ports.clear();
    for (auto w : b.bottom_ports) {
      p.bottom_ports.push_back(map[w]);
    }
    return Diagram::trusted(std::move(p));
  }

  //! Side-by-side union, d1 on the left.
  [[nodiscard]] inline Diagram sum(Diagram const& d1, Diagram const& d2) {
    if (!same_signature(d1.signature(), d2.signature())) {
      throw MismatchError("diagrams over different signatures");
    }
    if (d1.annular() || d2.annular()) {
      throw Error("the sum of annular diagrams is undefined");
    }
    auto const&  a   = d1.parts();
    auto const&  b   = d2.parts();
    DiagramParts p   = a;
    auto const   nw1 = static_cast<WireId>(a.wires.size());
    auto const   nt1 = static_cast<std::uint32_t>(a.transistors.size());
    auto const   top = static_cast<std::uint32_t>(a.top_ports.size());
    auto const   bot = static_cast<std::uint32_t>(a.bottom_ports.size());
    for (auto w : b.wires) {
      w.top_end    = detail::shift(w.top_end, nt1);
      w.bottom_end = detail::shift(w.bottom_end, nt1);
      if (w.top_end.site == Site::frame_top) {
        w.top_end.index += top;
      }
      if (w.bottom_end.site == Site::frame_bottom) {
        w.bottom_end.index += bot;
      }
      p.wires.push_back(std::move(w));
    }
    for (auto t : b.transistors) {
      for (auto& w : t.top) {
        w += nw1;
      }
      for (auto& w : t.bottom) {
        w += nw1;
      }
      p.transistors.push_back(std::move(t));
    }
    for (auto w : b.top_ports) {
      p.top_ports.push_back(w + nw1);
    }
    for (auto w : b.bottom_ports) {
      p.bottom_ports.push_back(w + nw1);
    }
    return Diagram::trusted(std::move(p));
  }

  //! Mirror image in a horizontal line, with inverted coefficients.
  [[nodiscard]] inline Diagram invert(Diagram const& d) {
    auto mirror = [](Attachment a) {
      switch (a.site) {
        case Site::frame_top:
          a.site = Site::frame_bottom;
          break;
        case Site::frame_bottom:
          a.site = Site::frame_top;
          break;
        case Site::transistor_top:
          a.site = Site::transistor_bottom;
          break;
        case Site::transistor_bottom:
          a.site = Site::transistor_top;
          break;
      }
      return a;
    };
    DiagramParts p = d.parts();
    for (auto& w : p.wires) {
      auto top     = w.top_end;
      w.top_end    = mirror(w.bottom_end);
      w.bottom_end = mirror(top);
      w.coeff      = w.coeff.inverse();
    }
    for (auto& t : p.transistors) {
      std::swap(t.top, t.bottom);
      t.positive = !t.positive;
    }
    std::swap(p.top_ports, p.bottom_ports);
    return Diagram::trusted(std::move(p));
  }

  //! Identity permutation helper: positions 0..n-1.
  [[nodiscard]] inline std::vector<std::size_t> identity_permutation(std::size_t n) {
    std::vector<std::size_t> out(n);
    std::iota(out.begin(), out.end(), 0);
    return out;
  }

}  // namespace picturecalc
