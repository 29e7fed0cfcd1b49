#pragma once

#include <algorithm>
#include <vector>

#include "atoms.hpp"
#include "geometry.hpp"
#include "reduce.hpp"

namespace picturecalc {

  struct Factor {
    Diagram unitary;
    Diagram permutation;
  };

  //! d = lead . U1 . P1 . ... . Un . Pn with every concatenation absolutely
  //! reduced; `lead` is a permutation diagram, needed when the first
  //! transistor's top wires are not adjacent at the top frame.
  struct Factorization {
    Diagram             lead;
    std::vector<Factor> factors;
  };

  namespace detail {
    //! Permutation diagram taking the wires listed in `from` to the order
    //! listed in `to`; both list the same wires of d.
    inline Diagram reorder(Diagram const&             d,
                           std::vector<WireId> const& from,
                           std::vector<WireId> const& to) {
      std::vector<std::size_t> perm(from.size());
      for (std::size_t i = 0; i < from.size(); ++i) {
        perm[i] = static_cast<std::size_t>(
            std::find(to.begin(), to.end(), from[i]) - to.begin());
      }
      return atom_permutation(d.signature(), d.letters_of(from), perm);
    }

    inline Word slice(Diagram const&             d,
                      std::vector<WireId> const& cur,
                      std::size_t                from,
                      std::size_t                to) {
      return d.letters_of(std::vector<WireId>(
          cur.begin() + static_cast<std::ptrdiff_t>(from),
          cur.begin() + static_cast<std::ptrdiff_t>(to)));
    }
  }  // namespace detail

  //! Splits a reduced diagram into unitary factors separated by
  //! permutations.  Coefficients are applied as soon as their wire enters
  //! the current level; transistors that are already adjacent fire first.
  [[nodiscard]] inline Factorization factorize(Diagram const& d) {
    if (!is_reduced(d)) {
      throw Error("factorize needs a reduced diagram");
    }
    auto const&          wires = d.wires();
    auto const&          ts    = d.transistors();
    std::vector<WireId>  cur   = d.top_ports();
    std::vector<WireId>  seg   = cur;
    std::vector<bool>    applied(wires.size(), false);
    std::vector<bool>    fired(ts.size(), false);
    std::vector<Diagram> perms;
    std::vector<Diagram> units;
    std::size_t          events = d.number_of_nontrivial_wires() + ts.size();

    auto ready = [&](TransistorId t) {
      return std::all_of(ts[t].top.begin(), ts[t].top.end(), [&](WireId w) {
        return std::find(cur.begin(), cur.end(), w) != cur.end();
      });
    };

    while (units.size() < events) {
      // coefficients first
      auto lin = std::find_if(cur.begin(), cur.end(), [&](WireId w) {
        return !applied[w] && !wires[w].coeff.is_identity();
      });
      if (lin != cur.end()) {
        auto pos = static_cast<std::size_t>(lin - cur.begin());
        perms.push_back(detail::reorder(d, seg, cur));
        units.push_back(
            atom_linear(d.signature(), d.letters_of(cur), pos, wires[*lin].coeff));
        applied[*lin] = true;
        seg           = cur;
        continue;
      }
      // an adjacent ready transistor, leftmost first
      std::ptrdiff_t best_pos = -1;
      TransistorId   best     = 0;
      for (TransistorId t = 0; t < ts.size(); ++t) {
        if (fired[t] || !ready(t)) {
          continue;
        }
        auto p = detail::find_run(cur, ts[t].top, false);
        if (p >= 0 && (best_pos < 0 || p < best_pos)) {
          best_pos = p;
          best     = t;
        }
      }
      if (best_pos < 0) {
        // bring the top wires of the first ready transistor together
        TransistorId t = 0;
        while (t < ts.size() && (fired[t] || !ready(t))) {
          ++t;
        }
        if (t == ts.size()) {
          throw InvalidDiagram("no transistor can fire");
        }
        std::size_t first = cur.size();
        for (auto w : ts[t].top) {
          first = std::min(
              first, static_cast<std::size_t>(std::find(cur.begin(), cur.end(), w) - cur.begin()));
        }
        std::vector<WireId> rest;
        for (std::size_t k = 0; k < cur.size(); ++k) {
          if (std::find(ts[t].top.begin(), ts[t].top.end(), cur[k]) == ts[t].top.end()) {
            rest.push_back(cur[k]);
          }
        }
        std::size_t before = 0;
        for (std::size_t k = 0; k < first; ++k) {
          before += std::find(ts[t].top.begin(), ts[t].top.end(), cur[k]) == ts[t].top.end();
        }
        cur = rest;
        cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(before), ts[t].top.begin(), ts[t].top.end());
        continue;
      }
      auto const  p   = static_cast<std::size_t>(best_pos);
      auto const& tr  = ts[best];
      auto const  len = tr.top.size();
      perms.push_back(detail::reorder(d, seg, cur));
      units.push_back(atom_transistor(d.signature(),
                                      detail::slice(d, cur, 0, p),
                                      tr.relation,
                                      tr.positive,
                                      detail::slice(d, cur, p + len, cur.size())));
      detail::replace_run(cur, p, len, tr.bottom);
      fired[best] = true;
      seg         = cur;
    }
    perms.push_back(detail::reorder(d, seg, d.bottom_ports()));

    Factorization out{perms.front(), {}};
    for (std::size_t i = 0; i < units.size(); ++i) {
      out.factors.push_back({units[i], perms[i + 1]});
    }
    return out;
  }

  //! Multiplies the factors back together.
  [[nodiscard]] inline Diagram product(Factorization const& f) {
    Diagram out = f.lead;
    for (auto const& [u, p] : f.factors) {
      out = multiply(multiply(out, u), p);
    }
    return out;
  }

}  // namespace picturecalc
