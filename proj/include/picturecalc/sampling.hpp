#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "moves.hpp"

namespace picturecalc {

  //! Seeded generator of random reduced diagrams with a fixed top word in
  //! one geometry.
  class DiagramSampler {
   public:
    DiagramSampler(SignaturePtr sig, Word base, Geometry g, std::uint64_t seed)
        : _sig(std::move(sig)), _base(std::move(base)), _geometry(g), _rng(seed) {
      _opt.geometry        = g;
      _opt.word_cap        = 12;
      _opt.free_generators = true;
    }

    [[nodiscard]] Geometry geometry() const noexcept {
      return _geometry;
    }
    [[nodiscard]] std::mt19937_64& rng() noexcept {
      return _rng;
    }

    //! A reduced (base, *)-diagram reached by a random walk of unitary moves.
    [[nodiscard]] Diagram walk(std::size_t steps) {
      Diagram d = eps(_sig, _base);
      for (std::size_t s = 0; s < steps; ++s) {
        auto moves = unitary_moves(d, _opt);
        if (moves.empty()) {
          break;
        }
        d = apply_move(d, moves[pick(moves.size())], _geometry);
      }
      return d;
    }

    //! A random reduced (base, base)-diagram A . X . B^-1 where A and B are
    //! walks with compatible bottoms and X rearranges and relabels them.
    [[nodiscard]] Diagram element(std::size_t max_steps) {
      auto a = walk(pick(max_steps + 1));
      for (int attempt = 0; attempt < 64; ++attempt) {
        auto b = walk(pick(max_steps + 1));
        if (auto x = bridge(a, b)) {
          return multiply(multiply(a, *x), invert(b));
        }
      }
      auto x = bridge(a, a);
      return multiply(multiply(a, *x), invert(a));
    }

    //! A product of a few elements, to reach beyond a single walk.
    [[nodiscard]] Diagram product(std::size_t factors, std::size_t max_steps) {
      Diagram d = element(max_steps);
      for (std::size_t i = 1; i < factors; ++i) {
        d = multiply(d, element(max_steps));
      }
      return d;
    }

   private:
    std::size_t pick(std::size_t n) {
      return std::uniform_int_distribution<std::size_t>(0, n - 1)(_rng);
    }

    //! A random element of the coefficient group of the letter, or identity
    //! two times out of three.
    GroupElement random_change(LetterId a) {
      auto const& spec = _sig->coefficients[a];
      if (spec.is_trivial() || pick(3) != 0) {
        return spec.identity();
      }
      if (spec.is_finite()) {
        auto els = spec.elements();
        return els[pick(els.size())];
      }
      return spec.generator(pick(spec.generators().size()), pick(2) == 1);
    }

    //! A diagram from bot(a) to bot(b) with no transistors allowed in the
    //! geometry, or nothing when the bottoms are incompatible.
    std::optional<Diagram> bridge(Diagram const& a, Diagram const& b) {
      auto u = a.bottom_word();
      auto v = b.bottom_word();
      if (u.size() != v.size()) {
        return std::nullopt;
      }
      auto const               n = u.size();
      std::vector<std::size_t> perm(n);
      switch (_geometry) {
        case Geometry::planar:
          if (u != v) {
            return std::nullopt;
          }
          std::iota(perm.begin(), perm.end(), 0);
          break;
        case Geometry::annular: {
          std::vector<std::size_t> shifts;
          for (std::size_t s = 0; s < n; ++s) {
            bool ok = true;
            for (std::size_t i = 0; i < n && ok; ++i) {
              ok = v[(i + s) % n] == u[i];
            }
            if (ok) {
              shifts.push_back(s);
            }
          }
          if (shifts.empty()) {
            return std::nullopt;
          }
          auto s = shifts[pick(shifts.size())];
          for (std::size_t i = 0; i < n; ++i) {
            perm[i] = (i + s) % n;
          }
          break;
        }
        case Geometry::braided: {
          std::map<LetterId, std::vector<std::size_t>> slots;
          for (std::size_t i = 0; i < n; ++i) {
            slots[v[i]].push_back(i);
          }
          for (auto& [letter, list] : slots) {
            std::shuffle(list.begin(), list.end(), _rng);
          }
          for (std::size_t i = 0; i < n; ++i) {
            auto& list = slots[u[i]];
            if (list.empty()) {
              return std::nullopt;
            }
            perm[i] = list.back();
            list.pop_back();
          }
          break;
        }
      }
      auto x = atom_permutation(_sig, u, perm);
      LabelledWord lw;
      for (auto letter : v) {
        lw.push_back({letter, random_change(letter)});
      }
      return concat(x, eps(_sig, lw));
    }

    SignaturePtr    _sig;
    Word            _base;
    Geometry        _geometry;
    MoveOptions     _opt;
    std::mt19937_64 _rng;
  };

}  // namespace picturecalc
