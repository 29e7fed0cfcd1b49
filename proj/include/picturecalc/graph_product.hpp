#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coeff.hpp"

namespace picturecalc {

  //! A finite simplicial graph whose vertices carry coefficient groups.
  class ProductGraph {
   public:
    ProductGraph(std::vector<GroupSpec>                              groups,
                 std::vector<std::pair<std::size_t, std::size_t>> const& edges)
        : _groups(std::move(groups)),
          _adjacent(_groups.size(), std::vector<bool>(_groups.size(), false)) {
      for (auto [u, v] : edges) {
        if (u >= _groups.size() || v >= _groups.size() || u == v) {
          throw Error("invalid graph edge");
        }
        _adjacent[u][v] = _adjacent[v][u] = true;
      }
    }

    [[nodiscard]] std::size_t number_of_vertices() const noexcept {
      return _groups.size();
    }
    [[nodiscard]] GroupSpec const& group(std::size_t v) const {
      return _groups.at(v);
    }
    [[nodiscard]] bool adjacent(std::size_t u, std::size_t v) const {
      return _adjacent.at(u).at(v);
    }

    friend bool operator==(ProductGraph const&, ProductGraph const&) = default;

   private:
    std::vector<GroupSpec>         _groups;
    std::vector<std::vector<bool>> _adjacent;
  };

  struct Syllable {
    std::size_t  vertex;
    GroupElement element;

    friend bool operator==(Syllable const&, Syllable const&) = default;
  };

  //! A word in the graph product of the vertex groups.
  class GraphProductWord {
   public:
    GraphProductWord(std::shared_ptr<ProductGraph const> graph,
                     std::vector<Syllable>               syllables)
        : _graph(std::move(graph)), _syllables(std::move(syllables)) {
      for (auto const& s : _syllables) {
        if (s.vertex >= _graph->number_of_vertices()) {
          throw Error("syllable vertex absent from graph");
        }
        if (!_graph->group(s.vertex).contains(s.element)) {
          throw MismatchError("syllable element outside its vertex group");
        }
      }
    }

    [[nodiscard]] ProductGraph const& graph() const noexcept {
      return *_graph;
    }
    [[nodiscard]] std::shared_ptr<ProductGraph const> const&
    graph_ptr() const noexcept {
      return _graph;
    }
    [[nodiscard]] std::vector<Syllable> const& syllables() const noexcept {
      return _syllables;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _syllables.size();
    }

   private:
    std::shared_ptr<ProductGraph const> _graph;
    std::vector<Syllable>               _syllables;
  };

  namespace detail {
    inline void require_same_graph(GraphProductWord const& a,
                                   GraphProductWord const& b) {
      if (a.graph_ptr() != b.graph_ptr() && !(a.graph() == b.graph())) {
        throw MismatchError("graph product words over different graphs");
      }
    }
  }  // namespace detail

  //! Inserts syllables one at a time into an already reduced word: a new
  //! syllable either amalgamates with the last syllable of its vertex that
  //! can be shuffled to the end, or is appended.
  [[nodiscard]] inline GraphProductWord gp_reduce(GraphProductWord const& w) {
    auto const&           g = w.graph();
    std::vector<Syllable> out;
    for (auto const& s : w.syllables()) {
      if (s.element.is_identity()) {
        continue;
      }
      std::size_t j     = out.size();
      bool        found = false;
      while (j > 0) {
        auto const& t = out[j - 1];
        if (t.vertex == s.vertex) {
          found = true;
          break;
        }
        if (!g.adjacent(t.vertex, s.vertex)) {
          break;
        }
        --j;
      }
      if (found) {
        auto product = out[j - 1].element * s.element;
        if (product.is_identity()) {
          out.erase(out.begin() + static_cast<std::ptrdiff_t>(j - 1));
        } else {
          out[j - 1].element = std::move(product);
        }
      } else {
        out.push_back(s);
      }
    }
    return GraphProductWord(w.graph_ptr(), std::move(out));
  }

  //! The lexicographically least shuffle of gp_reduce(w), comparing
  //! syllables by vertex index and then by element serialization.
  [[nodiscard]] inline GraphProductWord gp_normal_form(GraphProductWord const& w) {
    auto        reduced = gp_reduce(w);
    auto const& g       = reduced.graph();
    auto        rest    = reduced.syllables();
    auto        key     = [&](Syllable const& s) {
      return std::make_pair(s.vertex, g.group(s.vertex).format(s.element));
    };
    std::vector<Syllable> out;
    while (!rest.empty()) {
      std::size_t best = rest.size();
      for (std::size_t i = 0; i < rest.size(); ++i) {
        bool movable = true;
        for (std::size_t k = 0; k < i && movable; ++k) {
          movable = g.adjacent(rest[k].vertex, rest[i].vertex);
        }
        if (movable && (best == rest.size() || key(rest[i]) < key(rest[best]))) {
          best = i;
        }
      }
      out.push_back(rest[best]);
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(best));
    }
    return GraphProductWord(reduced.graph_ptr(), std::move(out));
  }

  [[nodiscard]] inline bool gp_equal(GraphProductWord const& a,
                                     GraphProductWord const& b) {
    detail::require_same_graph(a, b);
    return gp_normal_form(a).syllables() == gp_normal_form(b).syllables();
  }

  struct HeadSupport {
    std::vector<Syllable>    head;
    std::vector<std::size_t> support;
  };

  //! Head: syllables of the reduced form that some shuffle brings to the
  //! front.  Support: vertices of the reduced form, sorted.
  [[nodiscard]] inline HeadSupport gp_head_support(GraphProductWord const& w) {
    auto        reduced = gp_reduce(w);
    auto const& g       = reduced.graph();
    auto const& syl     = reduced.syllables();
    HeadSupport out;
    for (std::size_t i = 0; i < syl.size(); ++i) {
      bool movable = true;
      for (std::size_t k = 0; k < i && movable; ++k) {
        movable = g.adjacent(syl[k].vertex, syl[i].vertex);
      }
      if (movable) {
        out.head.push_back(syl[i]);
      }
    }
    std::set<std::size_t> vs;
    for (auto const& s : syl) {
      vs.insert(s.vertex);
    }
    out.support.assign(vs.begin(), vs.end());
    return out;
  }

}  // namespace picturecalc
