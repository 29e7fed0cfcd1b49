#pragma once

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <compare>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace picturecalc {

  enum class GroupKind : std::uint8_t { trivial, cyclic, free };

  //! An element of a trivial, finite cyclic or free group, in normal form.
  //! The element remembers the kind and size of its group so that mixing
  //! elements of different groups is detected; free generators are stored by
  //! index, their names live in the GroupSpec.
  class GroupElement {
   public:
    GroupElement() = default;

    static GroupElement trivial() {
      return GroupElement();
    }
    static GroupElement cyclic(std::int64_t modulus, std::int64_t residue) {
      GroupElement g;
      g._kind    = GroupKind::cyclic;
      g._order   = modulus;
      g._residue = ((residue % modulus) + modulus) % modulus;
      return g;
    }
    //! Letters are signed 1-based generator indices: +i is generator i-1,
    //! -i its inverse.  The word is freely reduced on construction.
    static GroupElement free(std::int64_t rank, std::span<std::int32_t const> w) {
      GroupElement g;
      g._kind  = GroupKind::free;
      g._order = rank;
      for (auto s : w) {
        if (s == 0 || std::abs(s) > rank) {
          throw Error("free generator index out of range");
        }
        g.push_letter(s);
      }
      return g;
    }

    [[nodiscard]] GroupKind kind() const noexcept {
      return _kind;
    }
    //! Modulus for cyclic groups, rank for free groups, 0 for trivial.
    [[nodiscard]] std::int64_t order() const noexcept {
      return _order;
    }
    [[nodiscard]] std::int64_t residue() const noexcept {
      return _residue;
    }
    [[nodiscard]] std::vector<std::int32_t> const& word() const noexcept {
      return _word;
    }
    [[nodiscard]] bool is_identity() const noexcept {
      return _residue == 0 && _word.empty();
    }
    [[nodiscard]] bool same_group(GroupElement const& other) const noexcept {
      return _kind == other._kind && _order == other._order;
    }

    [[nodiscard]] GroupElement operator*(GroupElement const& b) const {
      if (!same_group(b)) {
        throw MismatchError("group elements belong to different groups");
      }
      GroupElement out = *this;
      switch (_kind) {
        case GroupKind::trivial:
          break;
        case GroupKind::cyclic:
          out._residue = (_residue + b._residue) % _order;
          break;
        case GroupKind::free:
          for (auto s : b._word) {
            out.push_letter(s);
          }
          break;
      }
      return out;
    }

    [[nodiscard]] GroupElement inverse() const {
      GroupElement out = *this;
      if (_kind == GroupKind::cyclic) {
        out._residue = (_order - _residue) % _order;
      } else if (_kind == GroupKind::free) {
        std::reverse(out._word.begin(), out._word.end());
        for (auto& s : out._word) {
          s = -s;
        }
      }
      return out;
    }

    friend bool operator==(GroupElement const&, GroupElement const&) = default;
    friend auto operator<=>(GroupElement const&, GroupElement const&) = default;

   private:
    void push_letter(std::int32_t s) {
      if (!_word.empty() && _word.back() == -s) {
        _word.pop_back();
      } else {
        _word.push_back(s);
      }
    }

    GroupKind                 _kind    = GroupKind::trivial;
    std::int64_t              _order   = 0;
    std::int64_t              _residue = 0;
    std::vector<std::int32_t> _word;
  };

  [[nodiscard]] inline GroupElement coeff_multiply(GroupElement const& a,
                                                   GroupElement const& b) {
    return a * b;
  }

  [[nodiscard]] inline GroupElement coeff_invert(GroupElement const& a) {
    return a.inverse();
  }

  //! Describes one coefficient group: trivial, cyclic of order k, or free on
  //! named generators.
  class GroupSpec {
   public:
    GroupSpec() = default;

    static GroupSpec trivial() {
      return GroupSpec();
    }
    static GroupSpec cyclic(std::int64_t k) {
      if (k < 2) {
        throw Error("cyclic group order must be at least 2");
      }
      GroupSpec s;
      s._kind    = GroupKind::cyclic;
      s._modulus = k;
      return s;
    }
    static GroupSpec free(std::vector<std::string> generators) {
      if (generators.empty()) {
        throw Error("free group needs at least one generator");
      }
      for (std::size_t i = 0; i < generators.size(); ++i) {
        auto const& g = generators[i];
        if (g.empty() || g == "1"
            || g.find_first_of(".^,:= \t\n") != std::string::npos) {
          throw Error("invalid free generator name '" + g + "'");
        }
        for (std::size_t j = 0; j < i; ++j) {
          if (generators[j] == g) {
            throw Error("free generator '" + g + "' repeated");
          }
        }
      }
      GroupSpec s;
      s._kind       = GroupKind::free;
      s._generators = std::move(generators);
      return s;
    }
    //! Free group on R1..Rk.
    static GroupSpec free_rank(std::size_t k) {
      std::vector<std::string> gens;
      for (std::size_t i = 1; i <= k; ++i) {
        gens.push_back("R" + std::to_string(i));
      }
      return free(std::move(gens));
    }

    [[nodiscard]] GroupKind kind() const noexcept {
      return _kind;
    }
    [[nodiscard]] std::int64_t modulus() const noexcept {
      return _modulus;
    }
    [[nodiscard]] std::vector<std::string> const& generators() const noexcept {
      return _generators;
    }
    [[nodiscard]] bool is_trivial() const noexcept {
      return _kind == GroupKind::trivial;
    }
    [[nodiscard]] bool is_finite() const noexcept {
      return _kind != GroupKind::free;
    }
    [[nodiscard]] std::int64_t order() const noexcept {
      return _kind == GroupKind::free
                 ? static_cast<std::int64_t>(_generators.size())
                 : _modulus;
    }

    [[nodiscard]] GroupElement identity() const {
      switch (_kind) {
        case GroupKind::trivial:
          return GroupElement::trivial();
        case GroupKind::cyclic:
          return GroupElement::cyclic(_modulus, 0);
        case GroupKind::free:
          return GroupElement::free(order(), {});
      }
      return {};
    }
    [[nodiscard]] GroupElement residue(std::int64_t r) const {
      if (_kind != GroupKind::cyclic) {
        throw MismatchError("residues only exist in cyclic groups");
      }
      return GroupElement::cyclic(_modulus, r);
    }
    //! The generator with index i (0-based), or its inverse.
    [[nodiscard]] GroupElement generator(std::size_t i, bool inverse = false) const {
      if (_kind != GroupKind::free || i >= _generators.size()) {
        throw Error("no such free generator");
      }
      std::int32_t s = static_cast<std::int32_t>(i + 1) * (inverse ? -1 : 1);
      return GroupElement::free(order(), std::span(&s, 1));
    }

    [[nodiscard]] bool contains(GroupElement const& g) const noexcept {
      switch (_kind) {
        case GroupKind::trivial:
          return g.kind() == GroupKind::trivial;
        case GroupKind::cyclic:
          return g.kind() == GroupKind::cyclic && g.order() == _modulus;
        case GroupKind::free:
          return g.kind() == GroupKind::free && g.order() == order();
      }
      return false;
    }

    //! All elements, identity first; only for finite groups.
    [[nodiscard]] std::vector<GroupElement> elements() const {
      if (!is_finite()) {
        throw Error("cannot list the elements of a free group");
      }
      if (_kind == GroupKind::trivial) {
        return {identity()};
      }
      std::vector<GroupElement> out;
      for (std::int64_t r = 0; r < _modulus; ++r) {
        out.push_back(GroupElement::cyclic(_modulus, r));
      }
      return out;
    }

    //! A residue for cyclic groups (identity "0"); otherwise "1" for the
    //! identity or `.`-joined generator tokens with optional `^-1`.
    [[nodiscard]] std::string format(GroupElement const& g) const {
      if (!contains(g)) {
        throw MismatchError("element does not belong to this group");
      }
      if (_kind == GroupKind::cyclic) {
        return std::to_string(g.residue());
      }
      if (g.is_identity()) {
        return "1";
      }
      std::string out;
      for (std::size_t i = 0; i < g.word().size(); ++i) {
        auto s = g.word()[i];
        if (i != 0) {
          out += '.';
        }
        out += _generators[static_cast<std::size_t>(std::abs(s)) - 1];
        if (s < 0) {
          out += "^-1";
        }
      }
      return out;
    }

    [[nodiscard]] GroupElement parse(std::string_view text) const;

    [[nodiscard]] std::string to_string() const {
      switch (_kind) {
        case GroupKind::trivial:
          return "trivial";
        case GroupKind::cyclic:
          return "cyclic:" + std::to_string(_modulus);
        case GroupKind::free: {
          std::string out = "free:";
          for (std::size_t i = 0; i < _generators.size(); ++i) {
            out += (i == 0 ? "" : ",") + _generators[i];
          }
          return out;
        }
      }
      return {};
    }

    //! Inverse of to_string; "free:k" with an integer k names R1..Rk.
    [[nodiscard]] static GroupSpec from_string(std::string_view text);

    friend bool operator==(GroupSpec const&, GroupSpec const&) = default;

   private:
    GroupKind                _kind    = GroupKind::trivial;
    std::int64_t             _modulus = 0;
    std::vector<std::string> _generators;
  };

  namespace detail {
    inline std::string_view trim(std::string_view s) {
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
      }
      while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
      }
      return s;
    }

    inline bool parse_int(std::string_view s, std::int64_t& out) {
      s = trim(s);
      if (s.empty()) {
        return false;
      }
      bool neg = false;
      if (s.front() == '-') {
        neg = true;
        s.remove_prefix(1);
      }
      if (s.empty() || s.size() > 18) {
        return false;
      }
      std::int64_t v = 0;
      for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) {
          return false;
        }
        v = v * 10 + (c - '0');
      }
      out = neg ? -v : v;
      return true;
    }
  }  // namespace detail

  inline GroupElement GroupSpec::parse(std::string_view text) const {
    auto body = detail::trim(text);
    if (body.empty()) {
      throw ParseError("empty group element", 0);
    }
    if (_kind == GroupKind::cyclic) {
      std::int64_t r = 0;
      if (!detail::parse_int(body, r)) {
        throw ParseError("malformed residue", 0);
      }
      return GroupElement::cyclic(_modulus, r);
    }
    if (body == "1") {
      return identity();
    }
    if (_kind == GroupKind::trivial) {
      throw ParseError("the trivial group only contains 1", 0);
    }
    std::vector<std::int32_t> letters;
    std::size_t               pos = 0;
    while (pos <= body.size()) {
      auto next = body.find('.', pos);
      auto tok  = detail::trim(
          body.substr(pos, next == std::string_view::npos ? body.npos : next - pos));
      bool inv = false;
      if (auto caret = tok.find('^'); caret != std::string_view::npos) {
        if (detail::trim(tok.substr(caret + 1)) != "-1") {
          throw ParseError("malformed generator token", pos + caret);
        }
        inv = true;
        tok = detail::trim(tok.substr(0, caret));
      }
      if (tok.empty()) {
        throw ParseError("malformed generator token", pos);
      }
      auto it = std::find(_generators.begin(), _generators.end(), tok);
      if (it == _generators.end()) {
        throw ParseError("unknown generator '" + std::string(tok) + "'", pos);
      }
      auto idx = static_cast<std::int32_t>(it - _generators.begin()) + 1;
      letters.push_back(inv ? -idx : idx);
      if (next == std::string_view::npos) {
        break;
      }
      pos = next + 1;
    }
    return GroupElement::free(order(), letters);
  }

  [[nodiscard]] inline GroupElement coeff_parse(GroupSpec const& spec,
                                                std::string_view text) {
    return spec.parse(text);
  }

  inline GroupSpec GroupSpec::from_string(std::string_view text) {
    text = detail::trim(text);
    if (text == "trivial") {
      return trivial();
    }
    if (text.starts_with("cyclic:")) {
      std::int64_t k = 0;
      if (!detail::parse_int(text.substr(7), k)) {
        throw ParseError("malformed cyclic order", 7);
      }
      return cyclic(k);
    }
    if (text.starts_with("free:")) {
      auto         rest = text.substr(5);
      std::int64_t k    = 0;
      if (detail::parse_int(rest, k)) {
        if (k < 1) {
          throw ParseError("free rank must be positive", 5);
        }
        return free_rank(static_cast<std::size_t>(k));
      }
      std::vector<std::string> gens;
      std::size_t              pos = 0;
      while (true) {
        auto comma = rest.find(',', pos);
        gens.emplace_back(detail::trim(rest.substr(
            pos, comma == std::string_view::npos ? rest.npos : comma - pos)));
        if (comma == std::string_view::npos) {
          break;
        }
        pos = comma + 1;
      }
      return free(std::move(gens));
    }
    throw ParseError("expected trivial, cyclic:k or free:...", 0);
  }

  //! One GroupSpec per letter of a presentation's alphabet.
  class CoefficientSystem {
   public:
    CoefficientSystem() = default;
    explicit CoefficientSystem(std::vector<GroupSpec> specs)
        : _specs(std::move(specs)) {}

    static CoefficientSystem trivial(std::size_t letters) {
      return CoefficientSystem(std::vector<GroupSpec>(letters));
    }

    [[nodiscard]] std::size_t size() const noexcept {
      return _specs.size();
    }
    [[nodiscard]] GroupSpec const& operator[](std::size_t letter) const {
      return _specs.at(letter);
    }
    [[nodiscard]] std::vector<GroupSpec> const& specs() const noexcept {
      return _specs;
    }
    CoefficientSystem& set(std::size_t letter, GroupSpec spec) {
      _specs.at(letter) = std::move(spec);
      return *this;
    }
    [[nodiscard]] bool all_trivial() const noexcept {
      return std::all_of(
          _specs.begin(), _specs.end(), [](auto const& s) { return s.is_trivial(); });
    }
    [[nodiscard]] bool all_finite() const noexcept {
      return std::all_of(
          _specs.begin(), _specs.end(), [](auto const& s) { return s.is_finite(); });
    }

    friend bool operator==(CoefficientSystem const&, CoefficientSystem const&)
        = default;

   private:
    std::vector<GroupSpec> _specs;
  };

}  // namespace picturecalc
