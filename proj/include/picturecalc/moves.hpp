#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "atoms.hpp"
#include "canonical.hpp"
#include "geometry.hpp"
#include "reduce.hpp"

namespace picturecalc {

  //! Right multiplication of a (w,*)-diagram by one unitary diagram, up to
  //! the permutation in front of it: either a transistor fed by the bottom
  //! wires at `positions` (in that order), or a coefficient change by
  //! `delta` on the bottom wire at positions[0].
  struct Move {
    enum class Kind : std::uint8_t { transistor, linear };

    Kind                       kind     = Kind::transistor;
    RelationId                 relation = 0;
    bool                       positive = true;
    std::vector<std::uint32_t> positions;
    GroupElement               delta;
  };

  struct MoveOptions {
    Geometry    geometry  = Geometry::braided;
    std::size_t word_cap  = 12;
    // for free coefficient groups, offer the generators and their inverses
    // instead of refusing
    bool        free_generators = false;
  };

  namespace detail {
    inline void tuples(Word const&                 bottom,
                       Word const&                 side,
                       std::vector<std::uint32_t>& partial,
                       std::vector<bool>&          used,
                       std::vector<std::vector<std::uint32_t>>& out) {
      if (partial.size() == side.size()) {
        out.push_back(partial);
        return;
      }
      auto want = side[partial.size()];
      for (std::uint32_t i = 0; i < bottom.size(); ++i) {
        if (!used[i] && bottom[i] == want) {
          used[i] = true;
          partial.push_back(i);
          tuples(bottom, side, partial, used, out);
          partial.pop_back();
          used[i] = false;
        }
      }
    }
  }  // namespace detail

  //! Every unitary move available at the bottom of `d` in the geometry.
  [[nodiscard]] inline std::vector<Move> unitary_moves(Diagram const&     d,
                                                       MoveOptions const& opt) {
    std::vector<Move> out;
    auto const&       pres   = d.presentation();
    auto const        bottom = d.bottom_word();
    auto const        k      = bottom.size();
    for (RelationId r = 0; r < pres.number_of_relations(); ++r) {
      for (bool positive : {true, false}) {
        auto const& top = pres.top_side(r, positive);
        auto const& bot = pres.bottom_side(r, positive);
        if (top.size() > k || k - top.size() + bot.size() > opt.word_cap) {
          continue;
        }
        auto add = [&](std::vector<std::uint32_t> pos) {
          out.push_back({Move::Kind::transistor, r, positive, std::move(pos), {}});
        };
        switch (opt.geometry) {
          case Geometry::planar:
            for (std::size_t p = 0; p + top.size() <= k; ++p) {
              if (std::equal(top.begin(), top.end(), bottom.begin() + static_cast<std::ptrdiff_t>(p))) {
                std::vector<std::uint32_t> pos(top.size());
                for (std::size_t j = 0; j < top.size(); ++j) {
                  pos[j] = static_cast<std::uint32_t>(p + j);
                }
                add(std::move(pos));
              }
            }
            break;
          case Geometry::annular:
            for (std::size_t p = 0; p < k; ++p) {
              bool ok = true;
              for (std::size_t j = 0; j < top.size() && ok; ++j) {
                ok = bottom[(p + j) % k] == top[j];
              }
              if (ok) {
                std::vector<std::uint32_t> pos(top.size());
                for (std::size_t j = 0; j < top.size(); ++j) {
                  pos[j] = static_cast<std::uint32_t>((p + j) % k);
                }
                add(std::move(pos));
              }
            }
            break;
          case Geometry::braided: {
            std::vector<std::vector<std::uint32_t>> all;
            std::vector<std::uint32_t>              partial;
            std::vector<bool>                       used(k, false);
            detail::tuples(bottom, top, partial, used, all);
            for (auto& pos : all) {
              add(std::move(pos));
            }
            break;
          }
        }
      }
    }
    auto const& coeffs = d.coefficients();
    for (std::uint32_t i = 0; i < k; ++i) {
      auto const& spec = coeffs[bottom[i]];
      if (spec.is_trivial()) {
        continue;
      }
      if (!spec.is_finite()) {
        if (!opt.free_generators) {
          throw Error("linear moves over a free coefficient group are infinite");
        }
        for (std::size_t g = 0; g < spec.generators().size(); ++g) {
          for (bool inv : {false, true}) {
            out.push_back({Move::Kind::linear, 0, true, {i}, spec.generator(g, inv)});
          }
        }
        continue;
      }
      auto elements = spec.elements();
      for (std::size_t e = 1; e < elements.size(); ++e) {
        out.push_back({Move::Kind::linear, 0, true, {i}, elements[e]});
      }
    }
    return out;
  }

  //! The representative of d's class used in the given geometry: bottom
  //! ports in traversal order (braided), the rotation starting at the
  //! first-traversed bottom wire (annular), or d itself (planar).
  [[nodiscard]] inline Diagram normalize_rep(Diagram const& d, Geometry g) {
    if (g == Geometry::braided) {
      return normalize_class(d);
    }
    if (g == Geometry::planar) {
      return d;
    }
    auto         tr = detail::traverse(d);
    DiagramParts p  = d.parts();
    auto         it = std::min_element(
        p.bottom_ports.begin(), p.bottom_ports.end(), [&](WireId a, WireId b) {
          return tr.wire_rank[a] < tr.wire_rank[b];
        });
    std::rotate(p.bottom_ports.begin(), it, p.bottom_ports.end());
    for (std::uint32_t k = 0; k < p.bottom_ports.size(); ++k) {
      p.wires[p.bottom_ports[k]].bottom_end.index = k;
    }
    return Diagram::trusted(std::move(p));
  }

  //! Applies a move to a reduced diagram and reduces; the bottom order of the
  //! result keeps the geometry of d (the new wires replace the fed run,
  //! rotated to the front for annular runs that wrap).
  [[nodiscard]] inline Diagram apply_move(Diagram const& d,
                                          Move const&    m,
                                          Geometry       g) {
    DiagramParts p = d.parts();
    if (m.kind == Move::Kind::linear) {
      auto& w = p.wires[p.bottom_ports.at(m.positions.at(0))];
      w.coeff = w.coeff * m.delta;
      return Diagram::trusted(std::move(p));
    }
    auto const& pres = d.presentation();
    auto const& top  = pres.top_side(m.relation, m.positive);
    auto const& bot  = pres.bottom_side(m.relation, m.positive);
    if (m.positions.size() != top.size()) {
      throw Error("move does not fit the relation side");
    }
    auto const t = static_cast<TransistorId>(p.transistors.size());
    Transistor tr{m.relation, m.positive, {}, {}};
    for (std::uint32_t j = 0; j < top.size(); ++j) {
      auto w = p.bottom_ports.at(m.positions[j]);
      if (p.wires[w].label != top[j]) {
        throw Error("move does not fit the bottom word");
      }
      p.wires[w].bottom_end = {Site::transistor_top, t, j};
      tr.top.push_back(w);
    }
    for (std::uint32_t j = 0; j < bot.size(); ++j) {
      auto id = static_cast<WireId>(p.wires.size());
      p.wires.push_back({bot[j],
                         d.coefficients()[bot[j]].identity(),
                         {Site::transistor_bottom, t, j},
                         {Site::frame_bottom, 0, 0}});
      tr.bottom.push_back(id);
    }
    std::vector<WireId> order;
    if (g == Geometry::annular) {
      auto start = m.positions.front();
      auto k     = p.bottom_ports.size();
      order      = tr.bottom;
      for (std::size_t j = top.size(); j < k; ++j) {
        order.push_back(p.bottom_ports[(start + j) % k]);
      }
    } else {
      auto first = *std::min_element(m.positions.begin(), m.positions.end());
      for (std::uint32_t i = 0; i < p.bottom_ports.size(); ++i) {
        if (i == first) {
          order.insert(order.end(), tr.bottom.begin(), tr.bottom.end());
        }
        if (std::find(m.positions.begin(), m.positions.end(), i) == m.positions.end()) {
          order.push_back(p.bottom_ports[i]);
        }
      }
    }
    p.transistors.push_back(std::move(tr));
    p.bottom_ports = std::move(order);
    for (std::uint32_t k = 0; k < p.bottom_ports.size(); ++k) {
      p.wires[p.bottom_ports[k]].bottom_end = {Site::frame_bottom, 0, k};
    }
    return detail::reduce_from(std::move(p), {t});
  }

  struct Neighbor {
    std::string key;
    Diagram     rep;
    Move        move;
  };

  //! Distinct classes adjacent to the class of d, each with a representative
  //! normalized for the geometry and the move reaching it.
  [[nodiscard]] inline std::vector<Neighbor> neighbors(Diagram const&     d,
                                                       MoveOptions const& opt) {
    std::vector<Neighbor>                   out;
    std::unordered_map<std::string, bool>   seen;
    auto const                              self = canonical_key(d, KeyMode::klass);
    for (auto& m : unitary_moves(d, opt)) {
      auto rep = normalize_rep(apply_move(d, m, opt.geometry), opt.geometry);
      auto key = canonical_key(rep, KeyMode::klass);
      if (key == self || !seen.emplace(key, true).second) {
        continue;
      }
      out.push_back({std::move(key), std::move(rep), std::move(m)});
    }
    return out;
  }

  struct ClassVertex {
    std::string key;
    Diagram     rep;
    std::size_t distance;
  };

  struct ClassEdge {
    std::size_t from;
    std::size_t to;
    Move        move;  // applied to the representative of `from`
  };

  //! Breadth-first closure of the class graph around a base diagram.
  struct ClassBall {
    std::vector<ClassVertex>                     vertices;
    std::vector<ClassEdge>                       edges;
    std::unordered_map<std::string, std::size_t> index;
  };

  [[nodiscard]] inline ClassBall explore(Diagram const&     base,
                                         std::size_t        radius,
                                         MoveOptions const& opt) {
    ClassBall ball;
    auto      rep0 = normalize_rep(reduce(base), opt.geometry);
    auto      key0 = canonical_key(rep0, KeyMode::klass);
    ball.index.emplace(key0, 0);
    ball.vertices.push_back({std::move(key0), std::move(rep0), 0});

    std::vector<std::vector<Neighbor>> adj;
    std::size_t                        layer_start = 0;
    for (std::size_t dist = 0; dist < radius; ++dist) {
      std::size_t                     layer_end = ball.vertices.size();
      std::map<std::string, Diagram>  next;
      for (std::size_t v = layer_start; v < layer_end; ++v) {
        adj.push_back(neighbors(ball.vertices[v].rep, opt));
        for (auto const& nb : adj.back()) {
          if (!ball.index.contains(nb.key)) {
            next.emplace(nb.key, nb.rep);
          }
        }
      }
      for (auto& [key, rep] : next) {
        ball.index.emplace(key, ball.vertices.size());
        ball.vertices.push_back({key, std::move(rep), dist + 1});
      }
      layer_start = layer_end;
    }
    for (std::size_t v = adj.size(); v < ball.vertices.size(); ++v) {
      adj.push_back(neighbors(ball.vertices[v].rep, opt));
    }
    for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
      for (auto& nb : adj[v]) {
        auto it = ball.index.find(nb.key);
        if (it != ball.index.end() && it->second > v) {
          ball.edges.push_back({v, it->second, std::move(nb.move)});
        }
      }
    }
    return ball;
  }

}  // namespace picturecalc
