#pragma once

#include <algorithm>
#include <vector>

#include "atoms.hpp"
#include "factorize.hpp"
#include "reduce.hpp"
#include "thompson.hpp"

namespace picturecalc {

  //! <x | x = x^2> with the free group on R1..Rk attached to x: the target of
  //! the universal embedding for a presentation with k relations.
  [[nodiscard]] inline SignaturePtr embedding_signature(std::size_t relations) {
    return make_signature(parse_presentation("<x | x=x.x>"),
                          CoefficientSystem({GroupSpec::free_rank(relations)}));
  }

  //! Left comb with n carets: an (x, x^(n+1))-diagram, each new caret hung
  //! under the leftmost bottom wire.
  [[nodiscard]] inline Diagram gamma(SignaturePtr const& sig, std::size_t n) {
    Diagram out = eps(sig, Word{0});
    for (std::size_t i = 0; i < n; ++i) {
      out = concat(out, atom_transistor(sig, {}, 0, true, Word(i, 0)));
    }
    return out;
  }

  //! eps(x^n) + comb(t-1)^-1 . eps(x, R^(+-1)) . comb(m_out-1) + eps(x^m_pad):
  //! the image of one transistor labelled by relation `rel`, with t and
  //! m_out the lengths of its top and bottom sides.
  [[nodiscard]] inline Diagram make_block(SignaturePtr const& sig,
                                          std::size_t         n,
                                          std::size_t         t,
                                          RelationId          rel,
                                          bool                positive,
                                          std::size_t         m_out,
                                          std::size_t         m_pad) {
    if (t == 0 || m_out == 0) {
      throw Error("relation sides are nonempty");
    }
    auto const& spec = sig->coefficients[0];
    if (rel >= spec.generators().size()) {
      throw Error("no generator for this relation");
    }
    auto core = concat(concat(invert(gamma(sig, t - 1)),
                              eps(sig, LabelledWord{{0, spec.generator(rel, !positive)}})),
                       gamma(sig, m_out - 1));
    if (n > 0) {
      core = sum(eps(sig, Word(n, 0)), core);
    }
    if (m_pad > 0) {
      core = sum(core, eps(sig, Word(m_pad, 0)));
    }
    return core;
  }

  namespace detail {
    inline void require_trivial(Diagram const& d) {
      if (d.number_of_nontrivial_wires() != 0) {
        throw MismatchError("the embedding is defined on diagrams without coefficients");
      }
    }

    inline Diagram relabel_permutation(Diagram const& perm, SignaturePtr const& sig) {
      auto const&              ps = perm.parts();
      std::vector<std::size_t> p(ps.top_ports.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = ps.wires[ps.top_ports[k]].bottom_end.index;
      }
      return atom_permutation(sig, Word(p.size(), 0), p);
    }

    inline Diagram image_of_unitary(Diagram const& u, SignaturePtr const& sig) {
      auto const& pres = u.presentation();
      auto const& t    = u.transistors().front();
      auto        a    = u.wire(t.top.front()).top_end.index;
      auto        top  = pres.top_side(t.relation, t.positive).size();
      auto        bot  = pres.bottom_side(t.relation, t.positive).size();
      auto        b    = u.top_ports().size() - a - top;
      return make_block(sig, a, top, t.relation, t.positive, bot, b);
    }
  }  // namespace detail

  //! The images of the factors of reduce(d), concatenated without reduction.
  [[nodiscard]] inline Diagram psi_unreduced(Diagram const& d, SignaturePtr const& target) {
    detail::require_trivial(d);
    auto f   = factorize(reduce(d));
    auto out = detail::relabel_permutation(f.lead, target);
    for (auto const& [u, p] : f.factors) {
      out = concat(concat(out, detail::image_of_unitary(u, target)),
                   detail::relabel_permutation(p, target));
    }
    return out;
  }

  //! The universal embedding: permutations are relabelled by x and each
  //! transistor becomes a block whose middle wire carries its relation's
  //! generator.  Ladders of consecutive blocks may cancel, so the
  //! concatenation is reduced.
  [[nodiscard]] inline Diagram psi(Diagram const& d, SignaturePtr const& target) {
    return reduce(psi_unreduced(d, target));
  }

  [[nodiscard]] inline Diagram psi(Diagram const& d) {
    return psi(d, embedding_signature(d.presentation().number_of_relations()));
  }

  //! Forgets the coefficients of an embedded diagram and reads the result as
  //! a tree pair.
  [[nodiscard]] inline TreePair project_to_thompson(Diagram const& image) {
    detail::require_thompson(image.presentation(), 2);
    auto         plain = thompson_signature(2);
    DiagramParts p     = image.parts();
    p.signature        = plain;
    for (auto& w : p.wires) {
      w.coeff = GroupElement::trivial();
    }
    return diagram_to_tree_pair(Diagram::trusted(std::move(p)));
  }

  //! The projection of the embedding to Thompson's group.
  [[nodiscard]] inline TreePair project(Diagram const& d) {
    return project_to_thompson(psi(d));
  }

  struct LengthBounds {
    std::size_t length;
    std::size_t length_psi;
    bool        lower_ok;
    std::size_t constant;         // max over relations of |lhs| + |rhs| - 1
    bool        upper_ok;         // length_psi <= constant * length
    std::size_t short_constant;   // longest relation side plus one
    bool        short_constant_ok;
  };

  [[nodiscard]] inline std::size_t block_constant(Presentation const& p) {
    std::size_t c = 0;
    for (auto const& r : p.relations()) {
      c = std::max(c, r.lhs.size() + r.rhs.size() - 1);
    }
    return c;
  }

  [[nodiscard]] inline std::size_t longest_side(Presentation const& p) {
    std::size_t k = 0;
    for (auto const& r : p.relations()) {
      k = std::max({k, r.lhs.size(), r.rhs.size()});
    }
    return k;
  }

  [[nodiscard]] inline LengthBounds check_length_bounds(Diagram const& d) {
    LengthBounds b{};
    b.length            = length(d);
    b.length_psi        = reduced_length(psi(d));
    b.lower_ok          = b.length <= b.length_psi;
    b.constant          = block_constant(d.presentation());
    b.upper_ok          = b.length_psi <= b.constant * b.length;
    b.short_constant    = longest_side(d.presentation()) + 1;
    b.short_constant_ok = b.length_psi <= b.short_constant * b.length;
    return b;
  }

}  // namespace picturecalc
