#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "factorize.hpp"
#include "reduce.hpp"

namespace picturecalc {

  //! A node of an n-ary forest: the root it hangs from and the child
  //! indices leading to it.
  struct Address {
    std::uint32_t             root = 0;
    std::vector<std::uint8_t> digits;

    friend auto operator<=>(Address const&, Address const&) = default;
    friend bool operator==(Address const&, Address const&)  = default;

    [[nodiscard]] Address child(std::uint8_t k) const {
      Address a = *this;
      a.digits.push_back(k);
      return a;
    }
  };

  //! An ordered forest of n-ary trees, stored as its leaves left to right.
  class Forest {
   public:
    Forest() = default;

    Forest(std::size_t arity, std::size_t roots, std::vector<Address> leaves)
        : _arity(arity), _roots(roots), _leaves(std::move(leaves)) {
      if (_arity < 2) {
        throw Error("forest arity must be at least 2");
      }
      if (_roots == 0) {
        throw Error("a forest needs at least one root");
      }
      std::size_t i = 0;
      for (std::uint32_t r = 0; r < _roots; ++r) {
        check(Address{r, {}}, i);
      }
      if (i != _leaves.size()) {
        throw Error("leaves do not form a forest");
      }
    }

    static Forest trivial(std::size_t arity, std::size_t roots) {
      std::vector<Address> leaves;
      for (std::uint32_t r = 0; r < roots; ++r) {
        leaves.push_back({r, {}});
      }
      return Forest(arity, roots, std::move(leaves));
    }

    [[nodiscard]] std::size_t arity() const noexcept {
      return _arity;
    }
    [[nodiscard]] std::size_t roots() const noexcept {
      return _roots;
    }
    [[nodiscard]] std::vector<Address> const& leaves() const noexcept {
      return _leaves;
    }
    [[nodiscard]] std::size_t number_of_leaves() const noexcept {
      return _leaves.size();
    }
    [[nodiscard]] std::size_t number_of_carets() const noexcept {
      return (_leaves.size() - _roots) / (_arity - 1);
    }

    //! The forest with leaf i replaced by a caret.
    [[nodiscard]] Forest split(std::size_t i) const {
      std::vector<Address> leaves(_leaves.begin(), _leaves.begin() + static_cast<std::ptrdiff_t>(i));
      for (std::size_t k = 0; k < _arity; ++k) {
        leaves.push_back(_leaves.at(i).child(static_cast<std::uint8_t>(k)));
      }
      leaves.insert(leaves.end(), _leaves.begin() + static_cast<std::ptrdiff_t>(i) + 1, _leaves.end());
      Forest f;
      f._arity  = _arity;
      f._roots  = _roots;
      f._leaves = std::move(leaves);
      return f;
    }

    //! The internal nodes.
    [[nodiscard]] std::set<Address> internal() const {
      std::set<Address> out;
      for (auto const& leaf : _leaves) {
        Address a{leaf.root, {}};
        for (auto d : leaf.digits) {
          out.insert(a);
          a.digits.push_back(d);
        }
      }
      return out;
    }

    //! The forest whose internal nodes are the given set.
    static Forest from_internal(std::size_t              arity,
                                std::size_t              roots,
                                std::set<Address> const& internal) {
      std::vector<Address> leaves;
      auto                 walk = [&](auto&& self, Address const& a) -> void {
        if (!internal.contains(a)) {
          leaves.push_back(a);
          return;
        }
        for (std::size_t k = 0; k < arity; ++k) {
          self(self, a.child(static_cast<std::uint8_t>(k)));
        }
      };
      for (std::uint32_t r = 0; r < roots; ++r) {
        walk(walk, Address{r, {}});
      }
      return Forest(arity, roots, std::move(leaves));
    }

    friend bool operator==(Forest const&, Forest const&) = default;

   private:
    void check(Address const& a, std::size_t& i) const {
      if (i < _leaves.size() && _leaves[i] == a) {
        ++i;
        return;
      }
      if (i >= _leaves.size() || _leaves[i].root != a.root
          || _leaves[i].digits.size() <= a.digits.size()
          || !std::equal(a.digits.begin(), a.digits.end(), _leaves[i].digits.begin())) {
        throw Error("leaves do not form a forest");
      }
      for (std::size_t k = 0; k < _arity; ++k) {
        check(a.child(static_cast<std::uint8_t>(k)), i);
      }
    }

    std::size_t          _arity = 2;
    std::size_t          _roots = 1;
    std::vector<Address> _leaves;
  };

  //! Domain and image forests with domain leaf i matched to image leaf
  //! perm[i].  Equal root counts give group elements; differing counts give
  //! groupoid elements between powers of x.
  struct TreePair {
    Forest                   domain;
    Forest                   image;
    std::vector<std::size_t> perm;

    [[nodiscard]] std::size_t arity() const noexcept {
      return domain.arity();
    }

    friend bool operator==(TreePair const&, TreePair const&) = default;
  };

  enum class ThompsonClass : std::uint8_t { F, T_not_F, V_not_T };

  [[nodiscard]] inline char const* to_string(ThompsonClass c) {
    switch (c) {
      case ThompsonClass::F:
        return "F";
      case ThompsonClass::T_not_F:
        return "T_not_F";
      case ThompsonClass::V_not_T:
        return "V_not_T";
    }
    return "";
  }

  namespace detail {
    inline void check_pair(TreePair const& tp) {
      if (tp.domain.arity() != tp.image.arity()) {
        throw MismatchError("domain and image arities differ");
      }
      auto n = tp.domain.number_of_leaves();
      if (tp.image.number_of_leaves() != n || tp.perm.size() != n) {
        throw Error("domain and image leaf counts differ");
      }
      std::vector<bool> hit(n, false);
      for (auto j : tp.perm) {
        if (j >= n || hit[j]) {
          throw Error("leaf matching is not a bijection");
        }
        hit[j] = true;
      }
    }

    inline std::vector<std::size_t> inverse_perm(std::vector<std::size_t> const& p) {
      std::vector<std::size_t> out(p.size());
      for (std::size_t i = 0; i < p.size(); ++i) {
        out[p[i]] = i;
      }
      return out;
    }

    //! Leaves i..i+n-1 are the full child list of one node, in order.
    inline bool is_sibling_run(Forest const& f, std::size_t i) {
      auto const  n  = f.arity();
      auto const& ls = f.leaves();
      if (i + n > ls.size() || ls[i].digits.empty()) {
        return false;
      }
      for (std::size_t k = 0; k < n; ++k) {
        auto const& a = ls[i + k];
        if (a.root != ls[i].root || a.digits.size() != ls[i].digits.size()
            || a.digits.back() != k
            || !std::equal(a.digits.begin(), a.digits.end() - 1, ls[i].digits.begin())) {
          return false;
        }
      }
      return true;
    }

    //! Pulls the subdivision of each image leaf back to its matched domain
    //! leaf so that the image becomes `target`, a refinement of tp.image.
    inline TreePair refine_image(TreePair const& tp, Forest const& target) {
      auto const& img = tp.image.leaves();
      auto const& tl  = target.leaves();
      // suffixes of target leaves below each image leaf, and their indices
      std::vector<std::vector<std::vector<std::uint8_t>>> below(img.size());
      std::vector<std::vector<std::size_t>>               index(img.size());
      std::size_t                                         j = 0;
      for (std::size_t k = 0; k < tl.size(); ++k) {
        while (j < img.size()
               && !(tl[k].root == img[j].root && tl[k].digits.size() >= img[j].digits.size()
                    && std::equal(img[j].digits.begin(), img[j].digits.end(), tl[k].digits.begin()))) {
          ++j;
        }
        if (j == img.size()) {
          throw Error("target does not refine the image forest");
        }
        below[j].emplace_back(tl[k].digits.begin() + static_cast<std::ptrdiff_t>(img[j].digits.size()),
                              tl[k].digits.end());
        index[j].push_back(k);
      }
      std::vector<Address>     dom;
      std::vector<std::size_t> perm;
      for (std::size_t i = 0; i < tp.perm.size(); ++i) {
        auto const& leaf = tp.domain.leaves()[i];
        auto        m    = tp.perm[i];
        for (std::size_t s = 0; s < below[m].size(); ++s) {
          Address a = leaf;
          a.digits.insert(a.digits.end(), below[m][s].begin(), below[m][s].end());
          dom.push_back(std::move(a));
          perm.push_back(index[m][s]);
        }
      }
      return {Forest(tp.domain.arity(), tp.domain.roots(), std::move(dom)), target, std::move(perm)};
    }
  }  // namespace detail

  [[nodiscard]] inline TreePair tp_identity(std::size_t arity, std::size_t roots = 1) {
    auto f = Forest::trivial(arity, roots);
    return {f, f, identity_permutation(roots)};
  }

  [[nodiscard]] inline TreePair tp_inverse(TreePair const& tp) {
    return {tp.image, tp.domain, detail::inverse_perm(tp.perm)};
  }

  //! Removes matched caret pairs until none is left.
  [[nodiscard]] inline TreePair tp_reduce(TreePair tp) {
    detail::check_pair(tp);
    auto const n       = tp.arity();
    bool       changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = 0; i + n <= tp.perm.size(); ++i) {
        auto j = tp.perm[i];
        bool ok = detail::is_sibling_run(tp.domain, i) && detail::is_sibling_run(tp.image, j);
        for (std::size_t k = 1; ok && k < n; ++k) {
          ok = tp.perm[i + k] == j + k;
        }
        if (!ok) {
          continue;
        }
        auto collapse = [&](Forest const& f, std::size_t at) {
          std::vector<Address> ls = f.leaves();
          Address parent          = ls[at];
          parent.digits.pop_back();
          ls.erase(ls.begin() + static_cast<std::ptrdiff_t>(at),
                   ls.begin() + static_cast<std::ptrdiff_t>(at + n));
          ls.insert(ls.begin() + static_cast<std::ptrdiff_t>(at), parent);
          return Forest(f.arity(), f.roots(), std::move(ls));
        };
        tp.domain = collapse(tp.domain, i);
        tp.image  = collapse(tp.image, j);
        std::vector<std::size_t> perm;
        for (std::size_t k = 0; k < tp.perm.size(); ++k) {
          if (k > i && k < i + n) {
            continue;
          }
          auto v = tp.perm[k];
          perm.push_back(v > j ? v - (n - 1) : v);
        }
        tp.perm = std::move(perm);
        changed = true;
        break;
      }
    }
    return tp;
  }

  [[nodiscard]] inline bool tp_is_reduced(TreePair const& tp) {
    return tp_reduce(tp) == tp;
  }

  //! The composite with a on top: a's image roots are b's domain roots.
  [[nodiscard]] inline TreePair tp_multiply(TreePair const& a, TreePair const& b) {
    if (a.arity() != b.arity()) {
      throw MismatchError("tree pairs of different arities");
    }
    if (a.image.roots() != b.domain.roots()) {
      throw MismatchError("image roots differ from the next domain roots");
    }
    auto internal = a.image.internal();
    auto more     = b.domain.internal();
    internal.insert(more.begin(), more.end());
    auto common = Forest::from_internal(a.arity(), a.image.roots(), internal);
    auto a2     = detail::refine_image(a, common);
    auto b2     = tp_inverse(detail::refine_image(tp_inverse(b), common));
    std::vector<std::size_t> perm(a2.perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      perm[i] = b2.perm[a2.perm[i]];
    }
    return tp_reduce({a2.domain, b2.image, std::move(perm)});
  }

  [[nodiscard]] inline ThompsonClass membership(TreePair const& tp) {
    auto const& p = tp.perm;
    if (tp.domain.roots() == tp.image.roots()
        && std::is_sorted(p.begin(), p.end())) {
      return ThompsonClass::F;
    }
    auto n = p.size();
    for (std::size_t i = 0; i < n; ++i) {
      if (p[i] != (p[0] + i) % n) {
        return ThompsonClass::V_not_T;
      }
    }
    return ThompsonClass::T_not_F;
  }

  ////////////////////////////////////////////////////////////////////////
  // Text form
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline void format_node(Forest const& f, Address const& a, std::size_t& i, std::string& out) {
      if (i < f.leaves().size() && f.leaves()[i] == a) {
        out.push_back('.');
        ++i;
        return;
      }
      out.push_back('(');
      for (std::size_t k = 0; k < f.arity(); ++k) {
        format_node(f, a.child(static_cast<std::uint8_t>(k)), i, out);
      }
      out.push_back(')');
    }

    //! Parses concatenated trees; the arity is taken from the first caret
    //! unless given.
    inline Forest parse_forest(std::string_view text, std::size_t arity, std::size_t offset) {
      std::vector<Address> leaves;
      std::size_t          pos   = 0;
      std::uint32_t        roots = 0;
      auto skip = [&] {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) {
          ++pos;
        }
      };
      auto node = [&](auto&& self, Address const& a) -> void {
        skip();
        if (pos >= text.size()) {
          throw ParseError("unexpected end of tree", offset + pos);
        }
        if (text[pos] == '.') {
          ++pos;
          leaves.push_back(a);
          return;
        }
        if (text[pos] != '(') {
          throw ParseError("expected '.' or '('", offset + pos);
        }
        ++pos;
        std::size_t k = 0;
        for (;;) {
          skip();
          if (pos < text.size() && text[pos] == ')') {
            ++pos;
            break;
          }
          if (k >= 255) {
            throw ParseError("caret too wide", offset + pos);
          }
          self(self, a.child(static_cast<std::uint8_t>(k++)));
        }
        if (arity == 0) {
          arity = k;
        }
        if (k != arity || k < 2) {
          throw ParseError("caret has the wrong number of children", offset + pos - 1);
        }
      };
      skip();
      while (pos < text.size()) {
        node(node, Address{roots++, {}});
        skip();
      }
      if (roots == 0) {
        throw ParseError("empty forest", offset);
      }
      return Forest(arity == 0 ? 2 : arity, roots, std::move(leaves));
    }
  }  // namespace detail

  [[nodiscard]] inline std::string format_forest(Forest const& f) {
    std::string out;
    std::size_t i = 0;
    for (std::uint32_t r = 0; r < f.roots(); ++r) {
      detail::format_node(f, Address{r, {}}, i, out);
    }
    return out;
  }

  //! `domain|image@perm=p0,p1,...`, with `@arity=n` when n is not 2.
  [[nodiscard]] inline std::string format_tree_pair(TreePair const& tp) {
    std::string out = format_forest(tp.domain) + "|" + format_forest(tp.image) + "@perm=";
    for (std::size_t i = 0; i < tp.perm.size(); ++i) {
      out += (i ? "," : "") + std::to_string(tp.perm[i]);
    }
    if (tp.arity() != 2) {
      out += "@arity=" + std::to_string(tp.arity());
    }
    return out;
  }

  [[nodiscard]] inline TreePair parse_tree_pair(std::string_view text) {
    auto bar = text.find('|');
    if (bar == std::string_view::npos) {
      throw ParseError("expected '|' between the two forests", text.size());
    }
    auto        at    = text.find('@', bar);
    auto        trees = text.substr(bar + 1, at == std::string_view::npos ? std::string_view::npos : at - bar - 1);
    std::size_t arity = 0;
    std::vector<std::size_t> perm;
    bool                     have_perm = false;
    while (at != std::string_view::npos) {
      auto next = text.find('@', at + 1);
      auto opt  = text.substr(at + 1, next == std::string_view::npos ? std::string_view::npos : next - at - 1);
      auto eq   = opt.find('=');
      if (eq == std::string_view::npos) {
        throw ParseError("expected key=value after '@'", at + 1);
      }
      auto key = detail::trim(opt.substr(0, eq));
      auto val = opt.substr(eq + 1);
      if (key == "arity") {
        std::int64_t n = 0;
        if (!detail::parse_int(detail::trim(val), n) || n < 2 || n > 255) {
          throw ParseError("malformed arity", at + 1 + eq + 1);
        }
        arity = static_cast<std::size_t>(n);
      } else if (key == "perm") {
        have_perm       = true;
        std::size_t pos = 0;
        while (pos <= val.size()) {
          auto comma = val.find(',', pos);
          auto tok   = detail::trim(val.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
          std::int64_t v = 0;
          if (!detail::parse_int(tok, v) || v < 0) {
            throw ParseError("malformed leaf number", at + 1 + eq + 1 + pos);
          }
          perm.push_back(static_cast<std::size_t>(v));
          if (comma == std::string_view::npos) {
            break;
          }
          pos = comma + 1;
        }
      } else {
        throw ParseError("unknown option '" + std::string(key) + "'", at + 1);
      }
      at = next;
    }
    auto dom = detail::parse_forest(text.substr(0, bar), arity, 0);
    auto img = detail::parse_forest(trees, dom.arity(), bar + 1);
    if (!have_perm) {
      perm = identity_permutation(dom.number_of_leaves());
    }
    TreePair tp{std::move(dom), std::move(img), std::move(perm)};
    detail::check_pair(tp);
    return tp;
  }

  ////////////////////////////////////////////////////////////////////////
  // n-adic points
  ////////////////////////////////////////////////////////////////////////

  //! numerator / base^exponent, in lowest terms.
  class NAdic {
   public:
    NAdic(std::uint64_t numerator, std::uint32_t exponent, std::uint32_t base = 2)
        : _num(numerator), _exp(exponent), _base(base) {
      if (base < 2) {
        throw Error("n-adic base must be at least 2");
      }
      while (_exp > 0 && _num % _base == 0) {
        _num /= _base;
        --_exp;
      }
    }

    [[nodiscard]] std::uint64_t numerator() const noexcept {
      return _num;
    }
    [[nodiscard]] std::uint32_t exponent() const noexcept {
      return _exp;
    }
    [[nodiscard]] std::uint32_t base() const noexcept {
      return _base;
    }

    friend bool operator==(NAdic const&, NAdic const&) = default;

   private:
    std::uint64_t _num;
    std::uint32_t _exp;
    std::uint32_t _base;
  };

  [[nodiscard]] inline std::string format_nadic(NAdic const& q) {
    return std::to_string(q.numerator()) + "/" + std::to_string(q.base()) + "^"
           + std::to_string(q.exponent());
  }

  //! Accepts `k`, `k/n^m` or `k/d` with d a power of the given base.
  [[nodiscard]] inline NAdic parse_nadic(std::string_view text, std::uint32_t base = 2) {
    text       = detail::trim(text);
    auto slash = text.find('/');
    std::int64_t k = 0;
    if (!detail::parse_int(detail::trim(text.substr(0, slash)), k) || k < 0) {
      throw ParseError("malformed numerator", 0);
    }
    if (slash == std::string_view::npos) {
      return NAdic(static_cast<std::uint64_t>(k), 0, base);
    }
    auto den   = detail::trim(text.substr(slash + 1));
    auto caret = den.find('^');
    if (caret != std::string_view::npos) {
      std::int64_t b = 0, m = 0;
      if (!detail::parse_int(detail::trim(den.substr(0, caret)), b) || b != base) {
        throw ParseError("denominator base differs from the arity", slash + 1);
      }
      if (!detail::parse_int(detail::trim(den.substr(caret + 1)), m) || m < 0 || m > 40) {
        throw ParseError("malformed exponent", slash + 1 + caret + 1);
      }
      return NAdic(static_cast<std::uint64_t>(k), static_cast<std::uint32_t>(m), base);
    }
    std::int64_t d = 0;
    if (!detail::parse_int(den, d) || d < 1) {
      throw ParseError("malformed denominator", slash + 1);
    }
    std::uint32_t m = 0;
    while (d > 1) {
      if (d % base != 0) {
        throw ParseError("denominator is not a power of the base", slash + 1);
      }
      d /= base;
      ++m;
    }
    return NAdic(static_cast<std::uint64_t>(k), m, base);
  }

  namespace detail {
    inline std::uint64_t power(std::uint64_t b, std::uint32_t e) {
      std::uint64_t out = 1;
      for (std::uint32_t i = 0; i < e; ++i) {
        if (out > (std::uint64_t(1) << 62) / b) {
          throw Error("n-adic arithmetic overflow");
        }
        out *= b;
      }
      return out;
    }

    //! Left end of the interval of a node, as numerator over n^depth.
    inline std::uint64_t left_end(Address const& a, std::uint32_t n) {
      std::uint64_t v = a.root;
      for (auto d : a.digits) {
        v = v * n + d;
      }
      return v;
    }
  }  // namespace detail

  //! The right-continuous map on [0, roots) sending each image leaf
  //! interval affinely onto its matched domain leaf interval.  With this
  //! direction evaluate_map(tp_multiply(a, b), q) equals
  //! evaluate_map(a, evaluate_map(b, q)).
  [[nodiscard]] inline NAdic evaluate_map(TreePair const& tp, NAdic const& q) {
    auto const n = static_cast<std::uint32_t>(tp.arity());
    if (q.base() != n) {
      throw MismatchError("point base differs from the tree arity");
    }
    auto const inv = detail::inverse_perm(tp.perm);
    auto const e   = q.exponent();
    for (std::size_t j = 0; j < tp.image.number_of_leaves(); ++j) {
      auto const& leaf = tp.image.leaves()[j];
      auto const  d    = static_cast<std::uint32_t>(leaf.digits.size());
      auto const  L    = detail::left_end(leaf, n);
      // compare at exponent e + d
      auto const qn = q.numerator() * detail::power(n, d);
      auto const lo = L * detail::power(n, e);
      auto const hi = (L + 1) * detail::power(n, e);
      if (qn < lo || qn >= hi) {
        continue;
      }
      auto const& target = tp.domain.leaves()[inv[j]];
      auto const  d2     = static_cast<std::uint32_t>(target.digits.size());
      auto const  L2     = detail::left_end(target, n);
      // the offset (qn - lo) / n^(e+d) shrinks by n^(d-d2)
      auto const num = L2 * detail::power(n, e) + (qn - lo);
      return NAdic(num, e + d2, n);
    }
    throw Error("point outside the forest's range");
  }

  ////////////////////////////////////////////////////////////////////////
  // Bridge to diagrams over <x | x = x^n>
  ////////////////////////////////////////////////////////////////////////

  //! Signature of <x | x = x^n> with trivial coefficients.
  [[nodiscard]] inline SignaturePtr thompson_signature(std::size_t arity = 2) {
    return make_signature(
        parse_presentation("<x | x=x^" + std::to_string(arity) + ">"));
  }

  namespace detail {
    inline void require_thompson(Presentation const& p, std::size_t arity) {
      if (p.number_of_letters() != 1 || p.number_of_relations() != 1
          || p.relation(0).lhs != Word{0}
          || p.relation(0).rhs != Word(arity, 0)) {
        throw MismatchError("diagram is not over <x | x = x^" + std::to_string(arity) + ">");
      }
    }
  }  // namespace detail

  //! Domain carets become positive transistors hanging from the top frame,
  //! image carets negative transistors standing on the bottom frame, and
  //! matched leaves one wire.
  [[nodiscard]] inline Diagram tree_pair_to_diagram(TreePair const& tp, SignaturePtr sig) {
    detail::check_pair(tp);
    detail::require_thompson(sig->presentation, tp.arity());
    auto const   n  = tp.arity();
    auto const   id = sig->coefficients[0].identity();
    DiagramParts p;
    p.signature = sig;
    std::vector<WireId> leaf_wire(tp.domain.number_of_leaves());
    std::size_t         i = 0;
    auto new_wire = [&](Attachment top) {
      auto w = static_cast<WireId>(p.wires.size());
      p.wires.push_back({0, id, top, {Site::frame_bottom, 0, 0}});
      return w;
    };
    // domain side, top down
    auto down = [&](auto&& self, Address const& a, WireId w) -> void {
      auto const& ls = tp.domain.leaves();
      if (i < ls.size() && ls[i] == a) {
        leaf_wire[i++] = w;
        return;
      }
      auto t = static_cast<TransistorId>(p.transistors.size());
      p.transistors.push_back({0, true, {w}, {}});
      p.wires[w].bottom_end = {Site::transistor_top, t, 0};
      for (std::size_t k = 0; k < n; ++k) {
        auto c = new_wire({Site::transistor_bottom, t, static_cast<std::uint32_t>(k)});
        p.transistors[t].bottom.push_back(c);
        self(self, a.child(static_cast<std::uint8_t>(k)), c);
      }
    };
    for (std::uint32_t r = 0; r < tp.domain.roots(); ++r) {
      auto w = new_wire({Site::frame_top, 0, r});
      p.top_ports.push_back(w);
      down(down, Address{r, {}}, w);
    }
    // image side, bottom up; returns the wire leaving the node downwards
    auto inv = detail::inverse_perm(tp.perm);
    std::size_t j = 0;
    auto up = [&](auto&& self, Address const& a) -> WireId {
      auto const& ls = tp.image.leaves();
      if (j < ls.size() && ls[j] == a) {
        return leaf_wire[inv[j++]];
      }
      std::vector<WireId> kids;
      for (std::size_t k = 0; k < n; ++k) {
        kids.push_back(self(self, a.child(static_cast<std::uint8_t>(k))));
      }
      auto t = static_cast<TransistorId>(p.transistors.size());
      for (std::uint32_t k = 0; k < n; ++k) {
        p.wires[kids[k]].bottom_end = {Site::transistor_top, t, k};
      }
      auto w = new_wire({Site::transistor_bottom, t, 0});
      p.transistors.push_back({0, false, std::move(kids), {w}});
      return w;
    };
    for (std::uint32_t r = 0; r < tp.image.roots(); ++r) {
      auto w                = up(up, Address{r, {}});
      p.wires[w].bottom_end = {Site::frame_bottom, 0, r};
      p.bottom_ports.push_back(w);
    }
    return Diagram::trusted(std::move(p));
  }

  [[nodiscard]] inline Diagram tree_pair_to_diagram(TreePair const& tp) {
    return tree_pair_to_diagram(tp, thompson_signature(tp.arity()));
  }

  //! Reads a diagram over <x | x = x^n> with trivial coefficients as a tree
  //! pair by multiplying the pairs of its factors.
  [[nodiscard]] inline TreePair diagram_to_tree_pair(Diagram const& d) {
    auto const& pres = d.presentation();
    if (pres.number_of_letters() != 1 || pres.number_of_relations() != 1) {
      throw MismatchError("diagram is not over a Thompson presentation");
    }
    auto const n = pres.relation(0).rhs.size();
    detail::require_thompson(pres, n);
    if (d.number_of_nontrivial_wires() != 0) {
      throw MismatchError("tree pairs carry no coefficients");
    }
    auto r  = reduce(d);
    auto f  = factorize(r);
    auto as_pair = [&](Diagram const& perm_atom) {
      // wire i of a permutation atom runs from top port i to bottom port perm[i]
      auto const&              ps = perm_atom.parts();
      std::vector<std::size_t> perm(ps.top_ports.size());
      for (std::size_t k = 0; k < perm.size(); ++k) {
        perm[k] = ps.wires[ps.top_ports[k]].bottom_end.index;
      }
      auto forest = Forest::trivial(n, perm.size());
      return TreePair{forest, forest, std::move(perm)};
    };
    TreePair out = as_pair(f.lead);
    for (auto const& [u, pm] : f.factors) {
      auto const& t  = u.transistors().front();
      auto const& tw = u.wire(t.top.front()).top_end;
      auto        k  = u.top_ports().size();
      auto        at = tw.index;
      auto        step = [&](std::size_t roots, std::uint32_t where) {
        auto dom = Forest::trivial(n, roots).split(where);
        return TreePair{dom, Forest::trivial(n, dom.number_of_leaves()),
                        identity_permutation(dom.number_of_leaves())};
      };
      TreePair piece = t.positive ? step(k, at)
                                  : tp_inverse(step(u.bottom_ports().size(),
                                                    u.wire(t.bottom.front()).bottom_end.index));
      out = tp_multiply(out, piece);
      out = tp_multiply(out, as_pair(pm));
    }
    return out;
  }

  ////////////////////////////////////////////////////////////////////////
  // Random elements
  ////////////////////////////////////////////////////////////////////////

  //! A random forest with the given number of carets, grown by splitting
  //! uniformly chosen leaves.
  template <typename Rng>
  [[nodiscard]] Forest random_forest(std::size_t arity, std::size_t roots, std::size_t carets, Rng& rng) {
    auto f = Forest::trivial(arity, roots);
    for (std::size_t c = 0; c < carets; ++c) {
      std::uniform_int_distribution<std::size_t> pick(0, f.number_of_leaves() - 1);
      f = f.split(pick(rng));
    }
    return f;
  }

  //! A random reduced pair in F, T or V with at most `carets` carets per side.
  template <typename Rng>
  [[nodiscard]] TreePair random_tree_pair(std::size_t   arity,
                                          std::size_t   roots,
                                          std::size_t   carets,
                                          ThompsonClass kind,
                                          Rng&          rng) {
    auto dom = random_forest(arity, roots, carets, rng);
    auto img = random_forest(arity, roots, carets, rng);
    auto n   = dom.number_of_leaves();
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (kind == ThompsonClass::T_not_F) {
      std::uniform_int_distribution<std::size_t> shift(0, n - 1);
      std::rotate(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(shift(rng)), perm.end());
    } else if (kind == ThompsonClass::V_not_T) {
      std::shuffle(perm.begin(), perm.end(), rng);
    }
    return tp_reduce({std::move(dom), std::move(img), std::move(perm)});
  }

}  // namespace picturecalc
