#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "factorize.hpp"
#include "moves.hpp"

namespace picturecalc {

  ////////////////////////////////////////////////////////////////////////
  // Balls
  ////////////////////////////////////////////////////////////////////////

  //! A finite ball of the class graph with adjacency lists.
  struct BallGraph {
    SignaturePtr                          signature;
    Word                                  base;
    Geometry                              geometry = Geometry::braided;
    std::size_t                           radius   = 0;
    ClassBall                             ball;
    std::vector<std::vector<std::size_t>> adj;  // sorted neighbor indices

    [[nodiscard]] std::size_t size() const noexcept {
      return ball.vertices.size();
    }
    [[nodiscard]] Diagram const& rep(std::size_t v) const {
      return ball.vertices.at(v).rep;
    }
    [[nodiscard]] std::string const& key(std::size_t v) const {
      return ball.vertices.at(v).key;
    }
    [[nodiscard]] bool adjacent(std::size_t u, std::size_t v) const {
      return std::binary_search(adj[u].begin(), adj[u].end(), v);
    }
    [[nodiscard]] std::optional<std::size_t> find(std::string const& key) const {
      auto it = ball.index.find(key);
      if (it == ball.index.end()) {
        return std::nullopt;
      }
      return it->second;
    }
  };

  namespace detail {
    inline void build_adjacency(BallGraph& g) {
      g.adj.assign(g.size(), {});
      for (auto const& e : g.ball.edges) {
        g.adj[e.from].push_back(e.to);
        g.adj[e.to].push_back(e.from);
      }
      for (auto& a : g.adj) {
        std::sort(a.begin(), a.end());
      }
    }
  }  // namespace detail

  //! The ball of radius r around the class of `base`, with every edge
  //! between its vertices.
  [[nodiscard]] inline BallGraph ball(Diagram const&     base,
                                      std::size_t        r,
                                      MoveOptions const& opt) {
    if (!base.coefficients().all_finite()) {
      throw Error("balls need finite coefficient groups");
    }
    BallGraph g;
    g.signature = base.signature();
    g.base      = base.top_word();
    g.geometry  = opt.geometry;
    g.radius    = r;
    g.ball      = explore(base, r, opt);
    detail::build_adjacency(g);
    return g;
  }

  [[nodiscard]] inline BallGraph ball(SignaturePtr const& sig,
                                      Word const&         w,
                                      std::size_t         r,
                                      Geometry            geometry = Geometry::braided,
                                      std::size_t         word_cap = 12) {
    MoveOptions opt;
    opt.geometry = geometry;
    opt.word_cap = word_cap;
    return ball(eps(sig, w), r, opt);
  }

  //! The ball with one vertex and its edges removed; the vertex must not be
  //! the centre.
  [[nodiscard]] inline BallGraph without_vertex(BallGraph const& g, std::size_t dead) {
    if (dead == 0 || dead >= g.size()) {
      throw Error("can only remove a non-central vertex of the ball");
    }
    BallGraph out = g;
    out.ball.vertices.erase(out.ball.vertices.begin() + static_cast<std::ptrdiff_t>(dead));
    out.ball.index.clear();
    for (std::size_t v = 0; v < out.size(); ++v) {
      out.ball.index.emplace(out.ball.vertices[v].key, v);
    }
    out.ball.edges.clear();
    for (auto const& e : g.ball.edges) {
      if (e.from == dead || e.to == dead) {
        continue;
      }
      out.ball.edges.push_back({e.from - (e.from > dead), e.to - (e.to > dead), e.move});
    }
    detail::build_adjacency(out);
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Distances
  ////////////////////////////////////////////////////////////////////////

  inline constexpr std::uint16_t unreachable = std::numeric_limits<std::uint16_t>::max();

  //! All-pairs graph distances inside the ball.
  class DistanceTable {
   public:
    explicit DistanceTable(BallGraph const& g) : _n(g.size()), _d(_n * _n, unreachable) {
      std::vector<std::size_t> queue;
      for (std::size_t s = 0; s < _n; ++s) {
        auto* row = &_d[s * _n];
        row[s]    = 0;
        queue.assign(1, s);
        for (std::size_t head = 0; head < queue.size(); ++head) {
          auto u = queue[head];
          for (auto v : g.adj[u]) {
            if (row[v] == unreachable) {
              row[v] = static_cast<std::uint16_t>(row[u] + 1);
              queue.push_back(v);
            }
          }
        }
      }
    }

    [[nodiscard]] std::uint16_t operator()(std::size_t u, std::size_t v) const {
      return _d[u * _n + v];
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _n;
    }

   private:
    std::size_t                _n;
    std::vector<std::uint16_t> _d;
  };

  //! Distance between the classes of two (w, *)-diagrams in the whole
  //! graph: the length of a^-1 . b.
  [[nodiscard]] inline std::size_t pair_distance(Diagram const& a, Diagram const& b) {
    return length(concat(invert(a), b));
  }

  //! Representatives of the classes along the geodesic from [a] to [b] read
  //! off the factorization of a^-1 . b.
  [[nodiscard]] inline std::vector<Diagram> geodesic(Diagram const& a,
                                                     Diagram const& b,
                                                     Geometry       g = Geometry::braided) {
    auto                 f   = factorize(multiply(invert(a), b));
    Diagram              cur = multiply(a, f.lead);
    std::vector<Diagram> path{normalize_rep(cur, g)};
    for (auto const& [u, p] : f.factors) {
      cur = multiply(multiply(cur, u), p);
      path.push_back(normalize_rep(cur, g));
    }
    return path;
  }

  ////////////////////////////////////////////////////////////////////////
  // Reports
  ////////////////////////////////////////////////////////////////////////

  //! A violating configuration found by a check.
  struct Counterexample {
    std::string              kind;
    std::vector<std::size_t> vertices;
  };

  struct AxiomReport {
    std::size_t                 vertices  = 0;
    std::size_t                 edges     = 0;
    std::size_t                 triangle_checked   = 0;
    std::size_t                 triangle_skipped   = 0;
    std::size_t                 quadrangle_checked = 0;
    std::size_t                 quadrangle_skipped = 0;
    std::size_t                 triangles = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
    [[nodiscard]] bool triangle_free() const noexcept {
      return triangles == 0;
    }
  };

  namespace detail {
    inline std::vector<std::uint16_t> depths(BallGraph const& g, DistanceTable const& d) {
      std::vector<std::uint16_t> out(g.size());
      for (std::size_t v = 0; v < g.size(); ++v) {
        out[v] = d(0, v);
      }
      return out;
    }

    inline void note(std::vector<Counterexample>& out,
                     std::string                  kind,
                     std::vector<std::size_t>     vs,
                     std::size_t                  limit = 64) {
      if (out.size() < limit) {
        out.push_back({std::move(kind), std::move(vs)});
      }
    }

    inline std::size_t count_triangles(BallGraph const& g) {
      std::size_t n = 0;
      for (std::size_t a = 0; a < g.size(); ++a) {
        for (auto b : g.adj[a]) {
          if (b <= a) {
            continue;
          }
          for (auto c : g.adj[b]) {
            n += c > b && g.adjacent(a, c);
          }
        }
      }
      return n;
    }
  }  // namespace detail

  //! Triangle and quadrangle conditions on premises whose witness must lie
  //! in the ball, and searches for induced K4 minus an edge and K3,2.
  [[nodiscard]] inline AxiomReport verify_qm_axioms(BallGraph const& g) {
    AxiomReport   rep;
    DistanceTable d(g);
    auto const    depth = detail::depths(g, d);
    auto const    n     = g.size();
    auto const    inner = g.radius == 0 ? 0 : g.radius - 1;
    rep.vertices        = n;
    rep.edges           = g.ball.edges.size();
    for (std::size_t v = 0; v < n; ++v) {
      if (depth[v] == unreachable) {
        detail::note(rep.violations, "disconnected", {v});
      }
    }
    auto common_closer = [&](std::size_t u, std::size_t v, std::size_t w, std::size_t k,
                             std::size_t avoid) {
      for (auto x : g.adj[v]) {
        if (x != avoid && g.adjacent(w, x) && std::size_t(d(u, x)) + 1 == k) {
          return true;
        }
      }
      return false;
    };
    for (std::size_t u = 0; u < n; ++u) {
      // triangle condition
      for (auto const& e : g.ball.edges) {
        auto v = e.from;
        auto w = e.to;
        auto k = d(u, v);
        if (k == 0 || k == unreachable || d(u, w) != k) {
          continue;
        }
        if (depth[u] > inner || depth[v] > inner || depth[w] > inner) {
          ++rep.triangle_skipped;
          continue;
        }
        ++rep.triangle_checked;
        if (!common_closer(u, v, w, k, n)) {
          detail::note(rep.violations, "triangle", {u, v, w});
        }
      }
      // quadrangle condition
      for (std::size_t z = 0; z < n; ++z) {
        auto kz = d(u, z);
        if (kz < 2 || kz == unreachable) {
          continue;
        }
        auto const& nz = g.adj[z];
        for (std::size_t i = 0; i < nz.size(); ++i) {
          auto v = nz[i];
          if (d(u, v) + 1 != kz) {
            continue;
          }
          for (std::size_t j = i + 1; j < nz.size(); ++j) {
            auto w = nz[j];
            if (d(u, w) + 1 != kz || g.adjacent(v, w)) {
              continue;
            }
            if (depth[u] > inner || depth[v] > inner || depth[w] > inner) {
              ++rep.quadrangle_skipped;
              continue;
            }
            ++rep.quadrangle_checked;
            if (!common_closer(u, v, w, kz - 1, z)) {
              detail::note(rep.violations, "quadrangle", {u, v, w, z});
            }
          }
        }
      }
    }
    // induced K4 minus an edge: an edge ab with two nonadjacent common
    // neighbours, all within r - 1
    auto in = [&](std::size_t v) { return depth[v] <= inner; };
    for (auto const& e : g.ball.edges) {
      if (!in(e.from) || !in(e.to)) {
        continue;
      }
      std::vector<std::size_t> common;
      for (auto c : g.adj[e.from]) {
        if (in(c) && g.adjacent(e.to, c)) {
          common.push_back(c);
        }
      }
      for (std::size_t i = 0; i < common.size(); ++i) {
        for (std::size_t j = i + 1; j < common.size(); ++j) {
          if (!g.adjacent(common[i], common[j])) {
            detail::note(rep.violations, "K4-", {e.from, e.to, common[i], common[j]});
          }
        }
      }
    }
    // induced K3,2: two vertices at distance two with three pairwise
    // nonadjacent common neighbours
    for (std::size_t a = 0; a < n; ++a) {
      if (!in(a)) {
        continue;
      }
      std::map<std::size_t, std::vector<std::size_t>> common;
      for (auto c : g.adj[a]) {
        if (!in(c)) {
          continue;
        }
        for (auto b : g.adj[c]) {
          if (b > a && in(b) && !g.adjacent(a, b)) {
            common[b].push_back(c);
          }
        }
      }
      for (auto const& [b, cs] : common) {
        for (std::size_t i = 0; i < cs.size(); ++i) {
          for (std::size_t j = i + 1; j < cs.size(); ++j) {
            if (g.adjacent(cs[i], cs[j])) {
              continue;
            }
            for (std::size_t k = j + 1; k < cs.size(); ++k) {
              if (!g.adjacent(cs[i], cs[k]) && !g.adjacent(cs[j], cs[k])) {
                detail::note(rep.violations, "K3,2", {a, b, cs[i], cs[j], cs[k]});
              }
            }
          }
        }
      }
    }
    rep.triangles = detail::count_triangles(g);
    return rep;
  }

  struct MedianReport {
    std::size_t                 triples_checked = 0;
    std::size_t                 triples_skipped = 0;
    bool                        triangle_free   = true;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return triangle_free && violations.empty();
    }
  };

  //! Every triple whose median is certified to lie in the ball has exactly
  //! one median there.
  [[nodiscard]] inline MedianReport verify_medians(BallGraph const& g) {
    MedianReport  rep;
    DistanceTable d(g);
    auto const    depth = detail::depths(g, d);
    auto const    n     = g.size();
    rep.triangle_free   = detail::count_triangles(g) == 0;
    auto const words    = (n + 63) / 64;
    std::vector<std::uint64_t> interval(n * words);
    for (std::size_t x = 0; x < n; ++x) {
      // interval(x, y) as bitsets for all y
      std::fill(interval.begin(), interval.end(), 0);
      for (std::size_t y = 0; y < n; ++y) {
        for (std::size_t m = 0; m < n; ++m) {
          if (d(x, m) + d(m, y) == d(x, y)) {
            interval[y * words + m / 64] |= std::uint64_t(1) << (m % 64);
          }
        }
      }
      for (std::size_t y = x + 1; y < n; ++y) {
        for (std::size_t z = y + 1; z < n; ++z) {
          auto dxy = d(x, y), dxz = d(x, z), dyz = d(y, z);
          // the median sits at (dxy + dxz - dyz) / 2 from x; certify it is
          // inside the ball through the closest corner
          auto reach = std::min({depth[x] + (dxy + dxz - dyz) / 2,
                                 depth[y] + (dxy + dyz - dxz) / 2,
                                 depth[z] + (dxz + dyz - dxy) / 2});
          if (static_cast<std::size_t>(reach) > g.radius) {
            ++rep.triples_skipped;
            continue;
          }
          ++rep.triples_checked;
          std::size_t count = 0;
          for (std::size_t w = 0; w < words; ++w) {
            auto bits = interval[y * words + w] & interval[z * words + w];
            while (bits != 0) {
              auto m = w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits));
              bits &= bits - 1;
              count += d(y, m) + d(m, z) == dyz;
            }
          }
          if (count != 1) {
            detail::note(rep.violations, count == 0 ? "no median" : "several medians", {x, y, z});
          }
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Pins
  ////////////////////////////////////////////////////////////////////////

  //! A complete clique of classes differing in the coefficient of one bottom
  //! wire.
  struct Pin {
    std::vector<std::size_t> vertices;  // sorted
    LetterId                 letter;
  };

  struct PinReport {
    std::vector<Pin>            pins;        // complete pins of size at least 2
    std::size_t                 incomplete = 0;
    std::size_t                 triangles_checked = 0;
    std::size_t                 triangles_skipped = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  namespace detail {
    inline Diagram change_coefficient(Diagram const& d, std::size_t pos, GroupElement const& g) {
      DiagramParts p = d.parts();
      auto&        w = p.wires[p.bottom_ports.at(pos)];
      w.coeff        = g;
      return Diagram::trusted(std::move(p));
    }

    inline std::vector<Pin> find_pins(BallGraph const& g, std::size_t& incomplete) {
      std::set<std::vector<std::size_t>> seen;
      std::vector<Pin>                   out;
      for (std::size_t v = 0; v < g.size(); ++v) {
        auto const& rep    = g.rep(v);
        auto const  bottom = rep.bottom_word();
        for (std::size_t i = 0; i < bottom.size(); ++i) {
          auto const& spec = rep.coefficients()[bottom[i]];
          if (spec.is_trivial()) {
            continue;
          }
          std::vector<std::size_t> members;
          bool                     complete = true;
          for (auto const& x : spec.elements()) {
            auto other = normalize_rep(change_coefficient(rep, i, x), g.geometry);
            auto at    = g.find(canonical_key(other, KeyMode::klass));
            if (!at) {
              complete = false;
              break;
            }
            members.push_back(*at);
          }
          if (!complete) {
            ++incomplete;
            continue;
          }
          std::sort(members.begin(), members.end());
          if (seen.insert(members).second) {
            out.push_back({members, bottom[i]});
          }
        }
      }
      return out;
    }
  }  // namespace detail

  [[nodiscard]] inline PinReport pins_report(BallGraph const& g) {
    PinReport     rep;
    DistanceTable d(g);
    auto const    depth = detail::depths(g, d);
    auto const    inner = g.radius == 0 ? 0 : g.radius - 1;
    rep.pins            = detail::find_pins(g, rep.incomplete);
    std::vector<std::vector<std::size_t>> pins_at(g.size());
    for (std::size_t p = 0; p < rep.pins.size(); ++p) {
      auto const& pin   = rep.pins[p];
      auto        order = g.signature->coefficients[pin.letter].elements().size();
      auto        uniq  = std::set<std::size_t>(pin.vertices.begin(), pin.vertices.end());
      if (uniq.size() != order || pin.vertices.size() != order) {
        detail::note(rep.violations, "pin size", pin.vertices);
      }
      for (std::size_t i = 0; i < pin.vertices.size(); ++i) {
        pins_at[pin.vertices[i]].push_back(p);
        for (std::size_t j = i + 1; j < pin.vertices.size(); ++j) {
          if (!g.adjacent(pin.vertices[i], pin.vertices[j])) {
            detail::note(rep.violations, "pin not a clique", {pin.vertices[i], pin.vertices[j]});
          }
        }
      }
    }
    for (std::size_t v = 0; v < g.size(); ++v) {
      auto const& ps = pins_at[v];
      for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = i + 1; j < ps.size(); ++j) {
          auto const& a = rep.pins[ps[i]].vertices;
          auto const& b = rep.pins[ps[j]].vertices;
          std::vector<std::size_t> both;
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
          if (both.size() > 1 && both.front() == v) {
            detail::note(rep.violations, "pins share an edge", both);
          }
        }
      }
    }
    // every triangle lies in a pin
    for (std::size_t a = 0; a < g.size(); ++a) {
      for (auto b : g.adj[a]) {
        if (b <= a) {
          continue;
        }
        for (auto c : g.adj[b]) {
          if (c <= b || !g.adjacent(a, c)) {
            continue;
          }
          if (depth[a] > inner || depth[b] > inner || depth[c] > inner) {
            ++rep.triangles_skipped;
            continue;
          }
          ++rep.triangles_checked;
          bool inside = std::any_of(pins_at[a].begin(), pins_at[a].end(), [&](std::size_t p) {
            auto const& vs = rep.pins[p].vertices;
            return std::binary_search(vs.begin(), vs.end(), b)
                   && std::binary_search(vs.begin(), vs.end(), c);
          });
          if (!inside) {
            detail::note(rep.violations, "triangle outside pins", {a, b, c});
          }
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Hyperplanes
  ////////////////////////////////////////////////////////////////////////

  struct Hyperplane {
    std::size_t                           id = 0;
    std::vector<std::size_t>              edges;
    std::vector<std::vector<std::size_t>> cliques;  // carrier cliques, sorted vertex lists
    bool                                  interior = false;
    bool                                  linear   = false;
    std::size_t                           sectors  = 0;
  };

  struct HyperplaneReport {
    std::vector<Hyperplane>     hyperplanes;
    std::vector<std::size_t>    edge_class;   // hyperplane of each edge
    std::size_t                 squares = 0;
    std::size_t                 interior = 0;
    std::size_t                 geodesics_checked = 0;
    std::size_t                 geodesics_skipped = 0;
    std::size_t                 boundary_inconclusive = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  namespace detail {
    class UnionFind {
     public:
      explicit UnionFind(std::size_t n) : _p(n) {
        std::iota(_p.begin(), _p.end(), 0);
      }
      std::size_t find(std::size_t x) {
        while (_p[x] != x) {
          x = _p[x] = _p[_p[x]];
        }
        return x;
      }
      void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
          _p[std::max(a, b)] = std::min(a, b);
        }
      }

     private:
      std::vector<std::size_t> _p;
    };

    inline std::map<std::pair<std::size_t, std::size_t>, std::size_t>
    edge_index(BallGraph const& g) {
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> out;
      for (std::size_t e = 0; e < g.ball.edges.size(); ++e) {
        auto const& x = g.ball.edges[e];
        out[{std::min(x.from, x.to), std::max(x.from, x.to)}] = e;
      }
      return out;
    }

    //! Induced 4-cycles a-b-c-d, each listed once.
    inline std::vector<std::array<std::size_t, 4>> induced_squares(BallGraph const& g) {
      std::set<std::array<std::size_t, 4>> seen;
      std::vector<std::array<std::size_t, 4>> out;
      for (std::size_t a = 0; a < g.size(); ++a) {
        std::map<std::size_t, std::vector<std::size_t>> common;
        for (auto b : g.adj[a]) {
          for (auto c : g.adj[b]) {
            if (c > a && !g.adjacent(a, c)) {
              common[c].push_back(b);
            }
          }
        }
        for (auto const& [c, bs] : common) {
          for (std::size_t i = 0; i < bs.size(); ++i) {
            for (std::size_t j = i + 1; j < bs.size(); ++j) {
              if (g.adjacent(bs[i], bs[j])) {
                continue;
              }
              std::array<std::size_t, 4> sq{a, bs[i], c, bs[j]};
              // canonical form: the vertex set plus the diagonal pairing
              std::array<std::size_t, 4> id{std::min(a, c), std::max(a, c),
                                            std::min(bs[i], bs[j]), std::max(bs[i], bs[j])};
              if (id[0] > id[2]) {
                std::swap(id[0], id[2]);
                std::swap(id[1], id[3]);
              }
              if (seen.insert(id).second) {
                out.push_back(sq);
              }
            }
          }
        }
      }
      return out;
    }
  }  // namespace detail

  //! Edge classes under same-pin and opposite-side-of-a-square, with the
  //! sector, single-crossing and gate checks on interior classes.
  [[nodiscard]] inline HyperplaneReport hyperplanes_report(BallGraph const& g) {
    HyperplaneReport rep;
    DistanceTable    d(g);
    auto const       depth = detail::depths(g, d);
    auto const       n     = g.size();
    auto const&      edges = g.ball.edges;
    auto const       eidx  = detail::edge_index(g);
    auto edge_of = [&](std::size_t u, std::size_t v) {
      return eidx.at({std::min(u, v), std::max(u, v)});
    };
    auto const deep = g.radius < 2 ? 0 : g.radius - 2;

    detail::UnionFind uf(edges.size());
    std::size_t       incomplete = 0;
    auto const        pins       = detail::find_pins(g, incomplete);
    for (auto const& pin : pins) {
      for (std::size_t i = 1; i < pin.vertices.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
          uf.unite(edge_of(pin.vertices[0], pin.vertices[1]), edge_of(pin.vertices[j], pin.vertices[i]));
        }
      }
    }
    auto squares = detail::induced_squares(g);
    rep.squares  = squares.size();
    for (auto const& [a, b, c, x] : squares) {
      uf.unite(edge_of(a, b), edge_of(x, c));
      uf.unite(edge_of(b, c), edge_of(a, x));
    }

    std::map<std::size_t, std::size_t> class_id;
    rep.edge_class.resize(edges.size());
    for (std::size_t e = 0; e < edges.size(); ++e) {
      auto root = uf.find(e);
      auto it   = class_id.find(root);
      if (it == class_id.end()) {
        it = class_id.emplace(root, rep.hyperplanes.size()).first;
        rep.hyperplanes.push_back({});
        rep.hyperplanes.back().id = it->second;
      }
      rep.edge_class[e] = it->second;
      rep.hyperplanes[it->second].edges.push_back(e);
    }

    // carrier cliques
    std::vector<std::optional<std::size_t>> pin_of_edge(edges.size());
    for (std::size_t p = 0; p < pins.size(); ++p) {
      auto const& vs = pins[p].vertices;
      for (std::size_t i = 0; i < vs.size(); ++i) {
        for (std::size_t j = i + 1; j < vs.size(); ++j) {
          pin_of_edge[edge_of(vs[i], vs[j])] = p;
        }
      }
    }
    for (auto& h : rep.hyperplanes) {
      std::set<std::vector<std::size_t>> cl;
      std::size_t                        lin = 0;
      h.interior                             = true;
      for (auto e : h.edges) {
        auto const& x = edges[e];
        lin += x.move.kind == Move::Kind::linear;
        h.interior = h.interior && depth[x.from] <= deep && depth[x.to] <= deep;
        if (pin_of_edge[e]) {
          cl.insert(pins[*pin_of_edge[e]].vertices);
        } else if (x.move.kind == Move::Kind::linear) {
          // a linear edge whose pin leaves the ball
          h.interior = false;
        } else {
          cl.insert({std::min(x.from, x.to), std::max(x.from, x.to)});
        }
      }
      h.linear  = lin != 0;
      h.cliques = {cl.begin(), cl.end()};
      if (lin != 0 && lin != h.edges.size()) {
        detail::note(rep.violations, "mixed hyperplane", {edges[h.edges.front()].from});
      }
      if (h.linear) {
        // every linear edge of one hyperplane changes a wire with the same label
        std::set<LetterId> letters;
        for (auto e : h.edges) {
          auto const& x = edges[e];
          auto const& r = g.rep(x.from);
          letters.insert(r.wire(r.bottom_ports()[x.move.positions.front()]).label);
        }
        if (letters.size() != 1) {
          detail::note(rep.violations, "linear hyperplane with several letters",
                       {edges[h.edges.front()].from});
        }
      }
    }

    // sectors, fibers and gates
    for (auto& h : rep.hyperplanes) {
      std::vector<bool> cut(edges.size(), false);
      for (auto e : h.edges) {
        cut[e] = true;
      }
      detail::UnionFind comp(n);
      for (std::size_t e = 0; e < edges.size(); ++e) {
        if (!cut[e]) {
          comp.unite(edges[e].from, edges[e].to);
        }
      }
      std::set<std::size_t> roots;
      for (std::size_t v = 0; v < n; ++v) {
        roots.insert(comp.find(v));
      }
      h.sectors = roots.size();
      if (!h.interior) {
        continue;
      }
      ++rep.interior;
      for (auto const& clique : h.cliques) {
        std::map<std::size_t, std::size_t> comp_to_fiber;
        std::map<std::size_t, std::size_t> fiber_to_comp;
        for (std::size_t v = 0; v < n; ++v) {
          if (depth[v] > deep) {
            continue;
          }
          std::size_t best = 0, ties = 0, gate = 0;
          for (auto c : clique) {
            auto dc = d(v, c);
            if (ties == 0 || dc < best) {
              best = dc;
              gate = c;
              ties = 1;
            } else if (dc == best) {
              ++ties;
            }
          }
          if (ties != 1) {
            detail::note(rep.violations, "no unique gate", {v, clique.front()});
            continue;
          }
          auto c  = comp.find(v);
          auto a1 = comp_to_fiber.emplace(c, gate).first->second;
          auto a2 = fiber_to_comp.emplace(gate, c).first->second;
          if (a1 != gate || a2 != c) {
            detail::note(rep.violations, "sector differs from fiber", {v, gate});
          }
        }
      }
    }

    // single crossing along the factorization geodesics
    std::vector<std::size_t> inner;
    for (std::size_t v = 0; v < n; ++v) {
      if (depth[v] <= deep) {
        inner.push_back(v);
      }
    }
    for (std::size_t i = 0; i < inner.size(); ++i) {
      for (std::size_t j = i + 1; j < inner.size(); ++j) {
        auto u    = inner[i];
        auto v    = inner[j];
        auto path = geodesic(g.rep(u), g.rep(v), g.geometry);
        std::vector<std::size_t> at;
        bool                     inside = true;
        for (auto const& p : path) {
          auto k = g.find(canonical_key(p, KeyMode::klass));
          if (!k) {
            inside = false;
            break;
          }
          at.push_back(*k);
        }
        if (!inside) {
          ++rep.geodesics_skipped;
          continue;
        }
        ++rep.geodesics_checked;
        if (at.front() != u || at.back() != v || at.size() != d(u, v) + std::size_t(1)) {
          detail::note(rep.violations, "geodesic endpoints or length", {u, v});
          continue;
        }
        std::set<std::size_t> crossed;
        for (std::size_t k = 1; k < at.size(); ++k) {
          if (!g.adjacent(at[k - 1], at[k])) {
            detail::note(rep.violations, "geodesic step not an edge", {at[k - 1], at[k]});
            break;
          }
          auto h = rep.edge_class[edge_of(at[k - 1], at[k])];
          if (!crossed.insert(h).second) {
            if (rep.hyperplanes[h].interior) {
              detail::note(rep.violations, "hyperplane crossed twice", {u, v});
            } else {
              ++rep.boundary_inconclusive;
            }
          }
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Edge-level checks
  ////////////////////////////////////////////////////////////////////////

  struct EdgeReport {
    std::size_t                 edges = 0;
    std::size_t                 transistor_edges = 0;
    std::size_t                 linear_edges = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  //! Replays every edge's stored move, checks the change of length against
  //! the right-multiplication law and, for linear edges, that the endpoints
  //! differ exactly in one bottom coefficient.
  [[nodiscard]] inline EdgeReport verify_edges(BallGraph const& g) {
    EdgeReport rep;
    for (auto const& e : g.ball.edges) {
      ++rep.edges;
      auto const& a     = g.rep(e.from);
      auto        moved = apply_move(a, e.move, g.geometry);
      auto        key   = canonical_key(normalize_rep(moved, g.geometry), KeyMode::klass);
      if (key != g.key(e.to)) {
        detail::note(rep.violations, "witness does not reach the endpoint", {e.from, e.to});
        continue;
      }
      auto la = static_cast<long>(reduced_length(a));
      auto lb = static_cast<long>(reduced_length(moved));
      if (e.move.kind == Move::Kind::transistor) {
        ++rep.transistor_edges;
        if (std::abs(la - lb) != 1) {
          detail::note(rep.violations, "transistor edge length law", {e.from, e.to});
        }
        continue;
      }
      ++rep.linear_edges;
      auto        pos    = e.move.positions.front();
      auto const& before = a.wire(a.bottom_ports()[pos]).coeff;
      auto const  after  = before * e.move.delta;
      long        expect = before.is_identity() ? 1 : (after.is_identity() ? -1 : 0);
      if (lb - la != expect || after == before) {
        detail::note(rep.violations, "linear edge length law", {e.from, e.to});
      }
      // the endpoints agree once the changed wire is reset
      auto const id = a.coefficients()[a.wire(a.bottom_ports()[pos]).label].identity();
      if (canonical_key(detail::change_coefficient(a, pos, id))
          != canonical_key(detail::change_coefficient(moved, pos, id))) {
        detail::note(rep.violations, "linear edge changes more than one wire", {e.from, e.to});
      }
    }
    return rep;
  }

  struct GeodesicCountReport {
    std::size_t                 pairs_checked = 0;
    std::size_t                 max_geodesics = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  //! Vertices at distance two, both within r - 1, have at most two
  //! geodesics between them.
  [[nodiscard]] inline GeodesicCountReport verify_geodesic_count(BallGraph const& g) {
    GeodesicCountReport rep;
    DistanceTable       d(g);
    auto const          depth = detail::depths(g, d);
    auto const          inner = g.radius == 0 ? 0 : g.radius - 1;
    for (std::size_t u = 0; u < g.size(); ++u) {
      if (depth[u] > inner) {
        continue;
      }
      std::map<std::size_t, std::size_t> mids;
      for (auto m : g.adj[u]) {
        for (auto v : g.adj[m]) {
          if (v > u && depth[v] <= inner && d(u, v) == 2) {
            ++mids[v];
          }
        }
      }
      for (auto const& [v, count] : mids) {
        ++rep.pairs_checked;
        rep.max_geodesics = std::max(rep.max_geodesics, count);
        if (count > 2) {
          detail::note(rep.violations, "more than two geodesics", {u, v});
        }
      }
    }
    return rep;
  }

  struct SquareReport {
    std::size_t                 squares = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  //! Every induced square, read from a corner closest to the centre, is
  //! spanned by two moves on disjoint bottom wires whose composite reaches
  //! the opposite corner.
  [[nodiscard]] inline SquareReport verify_squares(BallGraph const& g) {
    SquareReport  rep;
    DistanceTable d(g);
    auto const    depth = detail::depths(g, d);
    MoveOptions   opt;
    opt.geometry = g.geometry;
    opt.word_cap = std::numeric_limits<std::size_t>::max();
    for (auto sq : detail::induced_squares(g)) {
      ++rep.squares;
      auto k = static_cast<std::size_t>(
          std::min_element(sq.begin(), sq.end(), [&](std::size_t a, std::size_t b) {
            return std::pair(depth[a], a) < std::pair(depth[b], b);
          }) - sq.begin());
      auto a = sq[k], b = sq[(k + 1) % 4], c = sq[(k + 2) % 4], x = sq[(k + 3) % 4];
      auto const& ra = g.rep(a);
      std::vector<Move> to_b, to_x;
      for (auto& m : unitary_moves(ra, opt)) {
        auto key = canonical_key(normalize_rep(apply_move(ra, m, g.geometry), g.geometry), KeyMode::klass);
        if (key == g.key(b)) {
          to_b.push_back(m);
        } else if (key == g.key(x)) {
          to_x.push_back(m);
        }
      }
      bool found = false;
      for (auto const& m1 : to_b) {
        for (auto const& m2 : to_x) {
          std::set<std::uint32_t> s1(m1.positions.begin(), m1.positions.end());
          if (std::any_of(m2.positions.begin(), m2.positions.end(),
                          [&](std::uint32_t p) { return s1.contains(p); })) {
            continue;
          }
          // track the second move's wires through the first move
          auto        first   = apply_move(ra, m1, g.geometry);
          auto const& old_bot = ra.bottom_ports();
          auto const& new_bot = first.bottom_ports();
          if (first.number_of_transistors() + first.number_of_nontrivial_wires()
                  < reduced_length(ra)
              || (m1.kind == Move::Kind::transistor
                  && first.number_of_transistors() != ra.number_of_transistors() + 1)) {
            continue;
          }
          Move m2b  = m2;
          bool okay = true;
          for (auto& p : m2b.positions) {
            // wires keep their ids when no cancellation happens
            auto it = std::find(new_bot.begin(), new_bot.end(), old_bot[p]);
            if (it == new_bot.end()) {
              okay = false;
              break;
            }
            p = static_cast<std::uint32_t>(it - new_bot.begin());
          }
          if (!okay) {
            continue;
          }
          auto both = normalize_rep(apply_move(first, m2b, g.geometry), g.geometry);
          if (canonical_key(both, KeyMode::klass) == g.key(c)) {
            found = true;
            break;
          }
        }
        if (found) {
          break;
        }
      }
      if (!found) {
        detail::note(rep.violations, "square without a disjoint-sum witness", {a, b, c, x});
      }
    }
    return rep;
  }

  //! Graph distance against the length formula for every pair of vertices.
  struct DistanceReport {
    std::size_t                 pairs = 0;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return violations.empty();
    }
  };

  [[nodiscard]] inline DistanceReport verify_distances(BallGraph const& g) {
    DistanceReport rep;
    DistanceTable  d(g);
    std::vector<Diagram> inverses;
    inverses.reserve(g.size());
    for (std::size_t v = 0; v < g.size(); ++v) {
      inverses.push_back(invert(g.rep(v)));
    }
    for (std::size_t u = 0; u < g.size(); ++u) {
      for (std::size_t v = u; v < g.size(); ++v) {
        ++rep.pairs;
        if (length(concat(inverses[u], g.rep(v))) != d(u, v)) {
          detail::note(rep.violations, "distance formula", {u, v});
        }
      }
    }
    return rep;
  }

  ////////////////////////////////////////////////////////////////////////
  // Condition (+) and rotative stabilisers
  ////////////////////////////////////////////////////////////////////////

  struct PlusEntry {
    Word                     m;
    std::vector<std::size_t> permutation;  // wire i goes to position p[i]
    bool                     witnessed      = false;
    std::size_t              witness_length = 0;
  };

  struct PlusReport {
    std::vector<Word>      words;
    std::vector<PlusEntry> entries;

    [[nodiscard]] std::size_t excluded() const noexcept {
      return static_cast<std::size_t>(std::count_if(
          entries.begin(), entries.end(), [](PlusEntry const& e) { return e.witnessed; }));
    }
    [[nodiscard]] std::size_t inconclusive() const noexcept {
      return entries.size() - excluded();
    }
    [[nodiscard]] bool all_excluded() const noexcept {
      return inconclusive() == 0;
    }
  };

  namespace detail {
    //! Multisets of letters (as sorted words) reachable from w by braided
    //! rewriting, bounded in size.
    inline std::set<Word> reachable_multisets(Presentation const& p, Word w, std::size_t cap) {
      std::sort(w.begin(), w.end());
      std::set<Word>    seen{w};
      std::vector<Word> todo{w};
      while (!todo.empty()) {
        auto cur = std::move(todo.back());
        todo.pop_back();
        for (RelationId r = 0; r < p.number_of_relations(); ++r) {
          for (bool positive : {true, false}) {
            auto top = p.top_side(r, positive);
            auto bot = p.bottom_side(r, positive);
            std::sort(top.begin(), top.end());
            if (!std::includes(cur.begin(), cur.end(), top.begin(), top.end())) {
              continue;
            }
            Word next;
            std::set_difference(cur.begin(), cur.end(), top.begin(), top.end(), std::back_inserter(next));
            next.insert(next.end(), bot.begin(), bot.end());
            std::sort(next.begin(), next.end());
            if (next.size() <= cap && seen.insert(next).second) {
              todo.push_back(next);
            }
          }
        }
      }
      return seen;
    }
  }  // namespace detail

  //! For every relevant word m with |m| <= m_max and every nontrivial
  //! label-preserving permutation P of m, looks for a diagram U of length at
  //! most `budget` with U^-1 P U not a permutation diagram.
  [[nodiscard]] inline PlusReport condition_plus_check(SignaturePtr const& sig,
                                                       Word const&         w,
                                                       std::size_t         m_max,
                                                       std::size_t         budget,
                                                       std::size_t         word_cap = 12) {
    auto const& pres  = sig->presentation;
    auto const  plain = make_signature(pres);
    PlusReport  rep;
    auto        reach = detail::reachable_multisets(pres, w, word_cap);
    std::set<Word> words;
    for (auto const& ms : reach) {
      for (std::size_t i = 0; i < ms.size(); ++i) {
        if (sig->coefficients[ms[i]].is_trivial() || ms.size() - 1 > m_max || ms.size() == 1) {
          continue;
        }
        Word m = ms;
        m.erase(m.begin() + static_cast<std::ptrdiff_t>(i));
        words.insert(m);
      }
    }
    rep.words = {words.begin(), words.end()};
    MoveOptions opt;
    opt.geometry = Geometry::braided;
    opt.word_cap = word_cap;
    for (auto const& m : rep.words) {
      auto probes = explore(eps(plain, m), budget, opt);
      std::vector<std::size_t> perm(m.size());
      std::iota(perm.begin(), perm.end(), 0);
      while (std::next_permutation(perm.begin(), perm.end())) {
        bool labels = true;
        for (std::size_t i = 0; i < m.size() && labels; ++i) {
          labels = m[perm[i]] == m[i];
        }
        if (!labels) {
          continue;
        }
        PlusEntry entry{m, perm, false, 0};
        auto      p = atom_permutation(plain, m, perm);
        for (auto const& v : probes.vertices) {
          auto conj = multiply(multiply(invert(v.rep), p), v.rep);
          if (conj.number_of_transistors() != 0) {
            entry.witnessed      = true;
            entry.witness_length = v.distance;
            break;
          }
        }
        rep.entries.push_back(std::move(entry));
      }
    }
    return rep;
  }

  struct StabiliserReport {
    bool                        refused = false;
    std::string                 reason;
    std::size_t                 candidates = 0;
    std::size_t                 cliques_checked = 0;
    bool                        regular = false;
    std::vector<Counterexample> violations;

    [[nodiscard]] bool pass() const noexcept {
      return !refused && regular && violations.empty();
    }
  };

  //! Under condition (+), the candidates D . (eps + eps(l, g)) . D^-1 built from
  //! one carrier pin of an interior linear hyperplane must preserve every
  //! carrier pin and act regularly on the chosen one.
  [[nodiscard]] inline StabiliserReport rotative_stab_probe(BallGraph const&        g,
                                                            HyperplaneReport const& hyper,
                                                            std::size_t             j,
                                                            PlusReport const&       plus) {
    StabiliserReport rep;
    if (!plus.all_excluded()) {
      rep.refused = true;
      rep.reason  = "condition (+) is not established; candidates under (+) only";
      return rep;
    }
    auto const& h = hyper.hyperplanes.at(j);
    if (!h.linear || !h.interior) {
      throw Error("the probe needs an interior linear hyperplane");
    }
    // the carrier pin and a wire witnessing it
    auto const& pin  = h.cliques.front();
    auto const& base = g.rep(pin.front());
    std::optional<std::size_t> pos;
    auto const bottom = base.bottom_word();
    for (std::size_t i = 0; i < bottom.size() && !pos; ++i) {
      auto const& spec = base.coefficients()[bottom[i]];
      if (spec.is_trivial()) {
        continue;
      }
      std::vector<std::size_t> members;
      for (auto const& x : spec.elements()) {
        auto other = normalize_rep(detail::change_coefficient(base, i, x), g.geometry);
        auto at    = g.find(canonical_key(other, KeyMode::klass));
        members.push_back(at ? *at : g.size());
      }
      std::sort(members.begin(), members.end());
      if (members == pin) {
        pos = i;
      }
    }
    if (!pos) {
      rep.violations.push_back({"no wire realizes the carrier pin", pin});
      return rep;
    }
    auto const& spec  = base.coefficients()[bottom[*pos]];
    auto        strip = detail::change_coefficient(base, *pos, spec.identity());
    auto        inv   = invert(strip);
    std::set<std::size_t> image_of_first;
    for (auto const& x : spec.elements()) {
      ++rep.candidates;
      LabelledWord lw;
      for (std::size_t i = 0; i < bottom.size(); ++i) {
        lw.push_back({bottom[i], i == *pos ? x : base.coefficients()[bottom[i]].identity()});
      }
      auto s = multiply(multiply(strip, eps(base.signature(), lw)), inv);
      for (auto const& clique : h.cliques) {
        ++rep.cliques_checked;
        std::vector<std::size_t> moved;
        for (auto v : clique) {
          auto at = g.find(canonical_key(normalize_rep(multiply(s, g.rep(v)), g.geometry), KeyMode::klass));
          moved.push_back(at ? *at : g.size());
        }
        if (&clique == &h.cliques.front()) {
          image_of_first.insert(moved.front());
        }
        std::sort(moved.begin(), moved.end());
        if (moved != clique) {
          rep.violations.push_back({"candidate moves a carrier pin", clique});
        }
      }
    }
    rep.regular = image_of_first.size() == pin.size() && rep.candidates == pin.size();
    return rep;
  }

}  // namespace picturecalc
