#pragma once

#include <algorithm>
#include <map>
#include <vector>

#include "geometry.hpp"
#include "moves.hpp"

namespace picturecalc {

  namespace detail {
    //! Largest growth of the boundary word under one transistor move.
    inline std::size_t max_growth(Presentation const& p) {
      std::size_t g = 0;
      for (auto const& r : p.relations()) {
        auto a = r.lhs.size();
        auto b = r.rhs.size();
        g      = std::max(g, a > b ? a - b : b - a);
      }
      return g;
    }

    //! Every way of reordering the bottom ports of d so that they spell w.
    inline void bottom_orders(Diagram const&                    d,
                              Word const&                       w,
                              Geometry                          g,
                              std::vector<std::vector<WireId>>& out) {
      auto const& ports = d.bottom_ports();
      auto const  v     = d.bottom_word();
      auto const  n     = v.size();
      if (n != w.size()) {
        return;
      }
      if (g == Geometry::planar) {
        if (v == w) {
          out.push_back(ports);
        }
        return;
      }
      if (g == Geometry::annular) {
        for (std::size_t s = 0; s < n; ++s) {
          bool ok = true;
          for (std::size_t i = 0; i < n && ok; ++i) {
            ok = v[(i + s) % n] == w[i];
          }
          if (ok) {
            std::vector<WireId> order(n);
            for (std::size_t i = 0; i < n; ++i) {
              order[i] = ports[(i + s) % n];
            }
            out.push_back(std::move(order));
          }
        }
        return;
      }
      std::vector<WireId> order(n);
      std::vector<bool>   used(n, false);
      auto fill = [&](auto&& self, std::size_t i) -> void {
        if (i == n) {
          out.push_back(order);
          return;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (!used[j] && v[j] == w[i]) {
            used[j]  = true;
            order[i] = ports[j];
            self(self, i + 1);
            used[j] = false;
          }
        }
      };
      fill(fill, 0);
    }
  }  // namespace detail

  //! All reduced (w, w)-diagrams of length at most `budget` in the given
  //! geometry, one per equivalence class, sorted by canonical key.
  [[nodiscard]] inline std::vector<Diagram> enumerate_reduced(SignaturePtr const& sig,
                                                              Word const&         w,
                                                              std::size_t         budget,
                                                              Geometry            g) {
    if (!sig->coefficients.all_finite()) {
      throw Error("cannot enumerate over a free coefficient group");
    }
    MoveOptions opt;
    opt.geometry = g;
    opt.word_cap = w.size() + budget * detail::max_growth(sig->presentation);
    auto ball    = explore(eps(sig, w), budget, opt);

    std::map<std::string, Diagram> found;
    for (auto const& v : ball.vertices) {
      std::vector<std::vector<WireId>> orders;
      detail::bottom_orders(v.rep, w, g, orders);
      for (auto& order : orders) {
        DiagramParts p = v.rep.parts();
        p.bottom_ports = std::move(order);
        for (std::uint32_t k = 0; k < p.bottom_ports.size(); ++k) {
          p.wires[p.bottom_ports[k]].bottom_end.index = k;
        }
        auto d = Diagram::trusted(std::move(p));
        if (has_geometry(d, g)) {
          auto key = canonical_key(d);
          found.emplace(std::move(key), std::move(d));
        }
      }
    }
    std::vector<Diagram> out;
    out.reserve(found.size());
    for (auto& [key, d] : found) {
      out.push_back(std::move(d));
    }
    return out;
  }

}  // namespace picturecalc
