#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace picturecalc {

  using LetterId   = std::uint32_t;
  using RelationId = std::uint32_t;
  using Word       = std::vector<LetterId>;

  struct Relation {
    Word lhs;
    Word rhs;

    friend bool operator==(Relation const&, Relation const&) = default;
  };

  struct Violation {
    enum class Kind {
      trivial_relation,
      swapped_pair,
      duplicate_relation,
      undeclared_letter,
      duplicate_letter,
      bad_letter_name,
      empty_side
    };
    Kind        kind;
    std::size_t index;  // relation index, or letter index for letter kinds
    std::string message;
  };

  namespace detail {
    inline bool is_reserved(char c) {
      switch (c) {
        case '<':
        case '>':
        case '|':
        case '=':
        case ',':
        case '.':
        case '^':
          return true;
        default:
          return std::isspace(static_cast<unsigned char>(c)) != 0;
      }
    }
  }  // namespace detail

  //! A semigroup presentation: an alphabet and oriented relations.  Letters
  //! are referred to by their index in declaration order.
  class Presentation {
   public:
    Presentation() = default;

    //! Throws Error when any invariant fails.
    Presentation(std::vector<std::string> alphabet,
                 std::vector<Relation>    relations);

    //! No validation; used to exhibit violations.
    static Presentation unchecked(std::vector<std::string> alphabet,
                                  std::vector<Relation>    relations) {
      Presentation p;
      p._alphabet  = std::move(alphabet);
      p._relations = std::move(relations);
      return p;
    }

    [[nodiscard]] std::vector<std::string> const& alphabet() const noexcept {
      return _alphabet;
    }
    [[nodiscard]] std::vector<Relation> const& relations() const noexcept {
      return _relations;
    }
    [[nodiscard]] std::size_t number_of_letters() const noexcept {
      return _alphabet.size();
    }
    [[nodiscard]] std::size_t number_of_relations() const noexcept {
      return _relations.size();
    }
    [[nodiscard]] Relation const& relation(RelationId r) const {
      if (r >= _relations.size()) {
        throw Error("relation index " + std::to_string(r) + " out of range");
      }
      return _relations[r];
    }
    [[nodiscard]] std::string const& name(LetterId a) const {
      return _alphabet.at(a);
    }
    [[nodiscard]] std::optional<LetterId> letter(std::string_view nm) const {
      auto it = std::find(_alphabet.begin(), _alphabet.end(), nm);
      if (it == _alphabet.end()) {
        return std::nullopt;
      }
      return static_cast<LetterId>(it - _alphabet.begin());
    }
    [[nodiscard]] bool single_character_letters() const noexcept {
      return std::all_of(_alphabet.begin(),
                         _alphabet.end(),
                         [](auto const& s) { return s.size() == 1; });
    }

    //! Relation side seen on top of a transistor of the given direction.
    [[nodiscard]] Word const& top_side(RelationId r, bool positive) const {
      return positive ? relation(r).lhs : relation(r).rhs;
    }
    [[nodiscard]] Word const& bottom_side(RelationId r, bool positive) const {
      return positive ? relation(r).rhs : relation(r).lhs;
    }

    //! Parses a word in the syntax of relation sides; empty text gives an
    //! empty word.
    [[nodiscard]] Word parse_word(std::string_view text) const;

    [[nodiscard]] std::string format_word(std::span<LetterId const> w) const {
      std::string out;
      for (std::size_t i = 0; i < w.size(); ++i) {
        if (i != 0) {
          out += '.';
        }
        out += name(w[i]);
      }
      return out;
    }

    friend bool operator==(Presentation const&, Presentation const&)
        = default;

   private:
    std::vector<std::string> _alphabet;
    std::vector<Relation>    _relations;
  };

  [[nodiscard]] inline std::vector<Violation>
  validate_presentation(Presentation const& p) {
    std::vector<Violation> out;
    auto const&            alpha = p.alphabet();
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      auto const& nm = alpha[i];
      if (nm.empty()
          || std::any_of(nm.begin(), nm.end(), detail::is_reserved)) {
        out.push_back({Violation::Kind::bad_letter_name,
                       i,
                       "letter " + std::to_string(i) + " has an invalid name '"
                           + nm + "'"});
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (alpha[j] == nm) {
          out.push_back({Violation::Kind::duplicate_letter,
                         i,
                         "letter '" + nm + "' declared twice"});
          break;
        }
      }
    }
    auto const& rels = p.relations();
    for (std::size_t r = 0; r < rels.size(); ++r) {
      auto const& rel = rels[r];
      if (rel.lhs.empty() || rel.rhs.empty()) {
        out.push_back({Violation::Kind::empty_side,
                       r,
                       "relation " + std::to_string(r) + " has an empty side"});
      }
      bool undeclared = false;
      for (auto const* side : {&rel.lhs, &rel.rhs}) {
        for (LetterId a : *side) {
          if (a >= alpha.size()) {
            undeclared = true;
          }
        }
      }
      if (undeclared) {
        out.push_back(
            {Violation::Kind::undeclared_letter,
             r,
             "relation " + std::to_string(r) + " uses an undeclared letter"});
      }
      if (rel.lhs == rel.rhs) {
        out.push_back({Violation::Kind::trivial_relation,
                       r,
                       "relation " + std::to_string(r) + " has the form u=u"});
      }
      for (std::size_t s = 0; s < r; ++s) {
        if (rels[s].lhs == rel.rhs && rels[s].rhs == rel.lhs
            && rel.lhs != rel.rhs) {
          out.push_back({Violation::Kind::swapped_pair,
                         r,
                         "relation " + std::to_string(r)
                             + " is relation " + std::to_string(s)
                             + " read backwards"});
        } else if (rels[s] == rel) {
          out.push_back({Violation::Kind::duplicate_relation,
                         r,
                         "relation " + std::to_string(r) + " repeats relation "
                             + std::to_string(s)});
        }
      }
    }
    return out;
  }

  inline Presentation::Presentation(std::vector<std::string> alphabet,
                                    std::vector<Relation>    relations)
      : _alphabet(std::move(alphabet)), _relations(std::move(relations)) {
    auto v = validate_presentation(*this);
    if (!v.empty()) {
      throw Error("invalid presentation: " + v.front().message);
    }
  }

  ////////////////////////////////////////////////////////////////////////
  // Parsing
  ////////////////////////////////////////////////////////////////////////

  namespace detail {

    class Scanner {
     public:
      explicit Scanner(std::string_view text) : _text(text) {}

      void skip_space() {
        while (_pos < _text.size()
               && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }
      [[nodiscard]] bool at_end() {
        skip_space();
        return _pos == _text.size();
      }
      [[nodiscard]] char peek() {
        skip_space();
        return _pos < _text.size() ? _text[_pos] : '\0';
      }
      bool accept(char c) {
        if (peek() == c) {
          ++_pos;
          return true;
        }
        return false;
      }
      void expect(char c) {
        if (!accept(c)) {
          throw ParseError(std::string("expected '") + c + "'", _pos);
        }
      }
      std::string ident() {
        skip_space();
        std::size_t start = _pos;
        while (_pos < _text.size() && !is_reserved(_text[_pos])) {
          ++_pos;
        }
        if (start == _pos) {
          throw ParseError("expected identifier", _pos);
        }
        return std::string(_text.substr(start, _pos - start));
      }
      std::size_t uint() {
        skip_space();
        std::size_t start = _pos;
        std::size_t value = 0;
        while (_pos < _text.size()
               && std::isdigit(static_cast<unsigned char>(_text[_pos]))) {
          value = value * 10 + static_cast<std::size_t>(_text[_pos] - '0');
          if (value > 1'000'000) {
            throw ParseError("exponent too large", start);
          }
          ++_pos;
        }
        if (start == _pos) {
          throw ParseError("expected unsigned integer", _pos);
        }
        return value;
      }
      [[nodiscard]] std::size_t position() {
        skip_space();
        return _pos;
      }

     private:
      std::string_view _text;
      std::size_t      _pos = 0;
    };

    // word := atom ('.' atom)* ; atom := ident ('^' uint)?
    // With single-character letters an ident may juxtapose several letters,
    // and a power binds to the last of them.
    inline Word parse_word(Scanner&                        sc,
                           std::vector<std::string> const& alphabet,
                           bool                            juxtapose) {
      Word w;
      do {
        std::size_t pos = sc.position();
        std::string id  = sc.ident();
        std::vector<std::string> pieces;
        if (juxtapose && id.size() > 1) {
          for (char c : id) {
            pieces.emplace_back(1, c);
          }
        } else {
          pieces.push_back(id);
        }
        std::size_t power = 1;
        if (sc.accept('^')) {
          power = sc.uint();
          if (power == 0) {
            throw ParseError("exponent must be positive", pos);
          }
        }
        for (std::size_t k = 0; k < pieces.size(); ++k) {
          auto it = std::find(alphabet.begin(), alphabet.end(), pieces[k]);
          if (it == alphabet.end()) {
            throw ParseError("undeclared letter '" + pieces[k] + "'", pos + k);
          }
          auto        a   = static_cast<LetterId>(it - alphabet.begin());
          std::size_t rep = (k + 1 == pieces.size()) ? power : 1;
          w.insert(w.end(), rep, a);
        }
      } while (sc.accept('.'));
      return w;
    }
  }  // namespace detail

  inline Word Presentation::parse_word(std::string_view text) const {
    detail::Scanner sc(text);
    if (sc.at_end()) {
      return {};
    }
    Word w = detail::parse_word(sc, _alphabet, single_character_letters());
    if (!sc.at_end()) {
      throw ParseError("unexpected trailing input", sc.position());
    }
    return w;
  }

  //! presentation := '<' ident (',' ident)* '|' rel (',' rel)* '>'
  [[nodiscard]] inline Presentation parse_presentation(std::string_view text) {
    detail::Scanner          sc(text);
    std::vector<std::string> alphabet;
    sc.expect('<');
    do {
      std::size_t pos = sc.position();
      auto        id  = sc.ident();
      if (std::find(alphabet.begin(), alphabet.end(), id) != alphabet.end()) {
        throw ParseError("duplicate letter '" + id + "'", pos);
      }
      alphabet.push_back(std::move(id));
    } while (sc.accept(','));
    sc.expect('|');
    bool const            jux = std::all_of(alphabet.begin(),
                                 alphabet.end(),
                                 [](auto const& s) { return s.size() == 1; });
    std::vector<Relation> relations;
    do {
      std::size_t pos = sc.position();
      Relation    rel;
      rel.lhs = detail::parse_word(sc, alphabet, jux);
      sc.expect('=');
      rel.rhs = detail::parse_word(sc, alphabet, jux);
      if (rel.lhs == rel.rhs) {
        throw ParseError("forbidden relation of the form u=u", pos);
      }
      for (auto const& other : relations) {
        if (other.lhs == rel.rhs && other.rhs == rel.lhs) {
          throw ParseError("relation repeats an earlier one backwards", pos);
        }
        if (other == rel) {
          throw ParseError("duplicate relation", pos);
        }
      }
      relations.push_back(std::move(rel));
    } while (sc.accept(','));
    sc.expect('>');
    if (!sc.at_end()) {
      throw ParseError("unexpected trailing input", sc.position());
    }
    return Presentation(std::move(alphabet), std::move(relations));
  }

  [[nodiscard]] inline std::string to_string(Presentation const& p) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.alphabet().size(); ++i) {
      out += (i == 0 ? "" : ",") + p.alphabet()[i];
    }
    out += " | ";
    for (std::size_t r = 0; r < p.relations().size(); ++r) {
      auto const& rel = p.relations()[r];
      out += (r == 0 ? "" : ", ") + p.format_word(rel.lhs) + "="
             + p.format_word(rel.rhs);
    }
    return out + ">";
  }

  ////////////////////////////////////////////////////////////////////////
  // Builtin fixtures
  ////////////////////////////////////////////////////////////////////////

  struct BuiltinPresentation {
    Presentation presentation;
    Word         baseword;
  };

  [[nodiscard]] inline BuiltinPresentation
  builtin_presentation(std::string_view name, std::span<int const> params) {
    auto need = [&](std::size_t k) {
      if (params.size() != k) {
        throw Error("builtin '" + std::string(name) + "' takes "
                    + std::to_string(k) + " parameters");
      }
    };
    auto at_least = [&](int v, int lo, char const* what) {
      if (v < lo) {
        throw Error(std::string("parameter ") + what + " must be at least "
                    + std::to_string(lo));
      }
      return static_cast<std::size_t>(v);
    };
    if (name == "thompson") {
      need(0);
      return {Presentation({"x"}, {{{0}, {0, 0}}}), {0}};
    }
    if (name == "higman") {
      need(2);
      auto n = at_least(params[0], 2, "n");
      auto r = at_least(params[1], 1, "r");
      return {Presentation({"x"}, {{{0}, Word(n, 0)}}), Word(r, 0)};
    }
    if (name == "quasi_auto") {
      need(3);
      auto n   = at_least(params[0], 2, "n");
      auto r   = at_least(params[1], 1, "r");
      auto p   = at_least(params[2], 0, "p");
      Word rhs = Word(n, 0);
      rhs.push_back(1);
      Word base(r, 0);
      base.insert(base.end(), p, 1);
      return {Presentation({"x", "a"}, {{{0}, rhs}}), base};
    }
    if (name == "houghton") {
      need(2);
      auto n = at_least(params[0], 1, "n");
      auto p = at_least(params[1], 0, "p");
      // letters: a = 0, r = 1, x_i = 1 + i
      std::vector<std::string> alphabet = {"a", "r"};
      Word                     product;
      for (std::size_t i = 1; i <= n; ++i) {
        alphabet.push_back("x" + std::to_string(i));
        product.push_back(static_cast<LetterId>(1 + i));
      }
      std::vector<Relation> rels = {{{1}, product}};
      for (std::size_t i = 1; i <= n; ++i) {
        auto xi = static_cast<LetterId>(1 + i);
        rels.push_back({{xi}, {0, xi}});
      }
      Word base = {1};
      base.insert(base.end(), p, 0);
      return {Presentation(std::move(alphabet), std::move(rels)), base};
    }
    if (name == "commuting_abc") {
      need(0);
      return {Presentation({"a", "b", "c"},
                           {{{0, 1}, {1, 0}}, {{0, 2}, {2, 0}}, {{1, 2}, {2, 1}}}),
              {0, 1, 2}};
    }
    throw Error("unknown builtin presentation '" + std::string(name) + "'");
  }

  //! Accepts "name" or "name:p1,p2,...".
  [[nodiscard]] inline BuiltinPresentation
  parse_builtin(std::string_view text) {
    auto             colon = text.find(':');
    std::string_view name  = text.substr(0, colon);
    std::vector<int> params;
    if (colon != std::string_view::npos) {
      std::string_view rest = text.substr(colon + 1);
      std::size_t      pos  = colon + 1;
      while (!rest.empty()) {
        auto        comma = rest.find(',');
        auto        tok   = rest.substr(0, comma);
        std::size_t used  = 0;
        int         v     = 0;
        try {
          v = std::stoi(std::string(tok), &used);
        } catch (std::exception const&) {
          throw ParseError("expected integer parameter", pos);
        }
        if (used != tok.size()) {
          throw ParseError("expected integer parameter", pos);
        }
        params.push_back(v);
        if (comma == std::string_view::npos) {
          break;
        }
        rest = rest.substr(comma + 1);
        pos += comma + 1;
      }
    }
    return builtin_presentation(name, params);
  }

}  // namespace picturecalc
