#pragma once

#include <optional>
#include <vector>

#include "atoms.hpp"
#include "diagram.hpp"

namespace picturecalc {

  //! Two transistors cancelling each other: the top wires of `lower` are,
  //! in order, exactly the bottom wires of `upper` (so lower precedes upper
  //! in the transistor order), the outer labels agree and every matched wire
  //! carries the identity.
  struct Dipole {
    TransistorId        lower;
    TransistorId        upper;
    std::vector<WireId> matched;

    friend bool operator==(Dipole const&, Dipole const&) = default;
  };

  namespace detail {

    //! Mutable working copy with tombstones, used by the reduction engine.
    class ReductionState {
     public:
      explicit ReductionState(DiagramParts p)
          : _p(std::move(p)),
            _wire_alive(_p.wires.size(), true),
            _transistor_alive(_p.transistors.size(), true) {}

      [[nodiscard]] DiagramParts const& parts() const noexcept {
        return _p;
      }
      [[nodiscard]] bool alive(TransistorId t) const {
        return _transistor_alive[t];
      }

      //! The dipole with `lower` as its lower transistor, if any.
      [[nodiscard]] std::optional<Dipole> dipole_below(TransistorId lower) const {
        if (!_transistor_alive[lower]) {
          return std::nullopt;
        }
        auto const& lt = _p.transistors[lower];
        auto const& w0 = _p.wires[lt.top.front()];
        if (w0.top_end.site != Site::transistor_bottom) {
          return std::nullopt;
        }
        TransistorId upper = w0.top_end.transistor;
        auto const&  ut    = _p.transistors[upper];
        if (ut.bottom != lt.top) {
          return std::nullopt;
        }
        for (auto w : lt.top) {
          if (!_p.wires[w].coeff.is_identity()) {
            return std::nullopt;
          }
        }
        auto const& pres = _p.signature->presentation;
        if (pres.top_side(ut.relation, ut.positive)
            != pres.bottom_side(lt.relation, lt.positive)) {
          return std::nullopt;
        }
        return Dipole{lower, upper, lt.top};
      }

      //! Removes the dipole and returns the transistors that may now sit
      //! below a new dipole.
      std::vector<TransistorId> cancel(Dipole const& dp) {
        auto const& ut = _p.transistors[dp.upper];
        auto const& lt = _p.transistors[dp.lower];
        std::vector<TransistorId> touched;
        for (std::size_t i = 0; i < ut.top.size(); ++i) {
          WireId above = ut.top[i];
          WireId below = lt.bottom[i];
          auto&  a     = _p.wires[above];
          auto&  b     = _p.wires[below];
          a.coeff      = a.coeff * b.coeff;
          a.bottom_end = b.bottom_end;
          if (b.bottom_end.site == Site::frame_bottom) {
            _p.bottom_ports[b.bottom_end.index] = above;
          } else {
            _p.transistors[b.bottom_end.transistor].top[b.bottom_end.index]
                = above;
            touched.push_back(b.bottom_end.transistor);
          }
          _wire_alive[below] = false;
        }
        for (auto w : dp.matched) {
          _wire_alive[w] = false;
        }
        _transistor_alive[dp.upper] = false;
        _transistor_alive[dp.lower] = false;
        return touched;
      }

      void reduce(std::vector<TransistorId> worklist) {
        while (!worklist.empty()) {
          auto t = worklist.back();
          worklist.pop_back();
          if (auto dp = dipole_below(t)) {
            auto more = cancel(*dp);
            worklist.insert(worklist.end(), more.begin(), more.end());
          }
        }
      }

      [[nodiscard]] DiagramParts compact() && {
        std::vector<WireId>       wmap(_p.wires.size(), 0);
        std::vector<TransistorId> tmap(_p.transistors.size(), 0);
        DiagramParts              out;
        out.signature = _p.signature;
        out.annular   = _p.annular;
        for (WireId w = 0; w < _p.wires.size(); ++w) {
          if (_wire_alive[w]) {
            wmap[w] = static_cast<WireId>(out.wires.size());
            out.wires.push_back(std::move(_p.wires[w]));
          }
        }
        for (TransistorId t = 0; t < _p.transistors.size(); ++t) {
          if (_transistor_alive[t]) {
            tmap[t] = static_cast<TransistorId>(out.transistors.size());
            out.transistors.push_back(std::move(_p.transistors[t]));
          }
        }
        for (auto& w : out.wires) {
          if (w.top_end.on_transistor()) {
            w.top_end.transistor = tmap[w.top_end.transistor];
          }
          if (w.bottom_end.on_transistor()) {
            w.bottom_end.transistor = tmap[w.bottom_end.transistor];
          }
        }
        for (auto& t : out.transistors) {
          for (auto& w : t.top) {
            w = wmap[w];
          }
          for (auto& w : t.bottom) {
            w = wmap[w];
          }
        }
        for (auto w : _p.top_ports) {
          out.top_ports.push_back(wmap[w]);
        }
        for (auto w : _p.bottom_ports) {
          out.bottom_ports.push_back(wmap[w]);
        }
        return out;
      }

     private:
      DiagramParts      _p;
      std::vector<bool> _wire_alive;
      std::vector<bool> _transistor_alive;
    };

    //! Reduces, looking for dipoles only below the listed transistors and
    //! below any transistor touched by a cancellation.
    [[nodiscard]] inline Diagram reduce_from(DiagramParts              p,
                                             std::vector<TransistorId> worklist) {
      ReductionState st(std::move(p));
      st.reduce(std::move(worklist));
      return Diagram::trusted(std::move(st).compact());
    }
  }  // namespace detail

  [[nodiscard]] inline std::vector<Dipole> find_dipoles(Diagram const& d) {
    detail::ReductionState st(d.parts());
    std::vector<Dipole>    out;
    for (TransistorId t = 0; t < d.number_of_transistors(); ++t) {
      if (auto dp = st.dipole_below(t)) {
        out.push_back(std::move(*dp));
      }
    }
    return out;
  }

  //! Cancels one dipole; the merged wire carries the upper coefficient times
  //! the lower one.
  [[nodiscard]] inline Diagram reduce_dipole(Diagram const& d, Dipole const& dp) {
    detail::ReductionState st(d.parts());
    if (dp.lower >= d.number_of_transistors()
        || dp.upper >= d.number_of_transistors()
        || st.dipole_below(dp.lower) != std::optional<Dipole>(dp)) {
      throw Error("not a dipole of this diagram");
    }
    st.cancel(dp);
    return Diagram::trusted(std::move(st).compact());
  }

  [[nodiscard]] inline Diagram reduce(Diagram const& d) {
    std::vector<TransistorId> all(d.number_of_transistors());
    for (TransistorId t = 0; t < all.size(); ++t) {
      all[t] = static_cast<TransistorId>(all.size() - 1 - t);
    }
    return detail::reduce_from(d.parts(), std::move(all));
  }

  [[nodiscard]] inline bool is_reduced(Diagram const& d) {
    detail::ReductionState st(d.parts());
    for (TransistorId t = 0; t < d.number_of_transistors(); ++t) {
      if (st.dipole_below(t)) {
        return false;
      }
    }
    return true;
  }

  [[nodiscard]] inline Diagram multiply(Diagram const& d1, Diagram const& d2) {
    return reduce(concat(d1, d2));
  }

  //! Transistors plus nontrivially labelled wires of the reduced diagram.
  [[nodiscard]] inline std::size_t length(Diagram const& d) {
    auto r = reduce(d);
    return r.number_of_transistors() + r.number_of_nontrivial_wires();
  }

  //! As length, for a diagram already known to be reduced.
  [[nodiscard]] inline std::size_t reduced_length(Diagram const& d) {
    return d.number_of_transistors() + d.number_of_nontrivial_wires();
  }

}  // namespace picturecalc
