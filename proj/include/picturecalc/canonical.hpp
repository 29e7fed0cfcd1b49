#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <string>
#include <vector>

#include "diagram.hpp"

namespace picturecalc {

  enum class KeyMode : std::uint8_t { exact, klass };

  namespace detail {

    //! Wires and transistors numbered by a breadth-first walk that starts at
    //! the top frame ports in order and, at each transistor, reads its top
    //! slots then its bottom slots.  The walk never reads the bottom frame
    //! order, so it is shared by a diagram and all its right-composites with
    //! permutations.
    struct Traversal {
      std::vector<std::uint32_t> wire_rank;
      std::vector<std::uint32_t> transistor_rank;
      std::vector<WireId>        wire_order;
      std::vector<TransistorId>  transistor_order;
    };

    inline Traversal traverse(Diagram const& d) {
      constexpr auto unseen = static_cast<std::uint32_t>(-1);
      auto const&    p      = d.parts();
      Traversal      tr;
      tr.wire_rank.assign(p.wires.size(), unseen);
      tr.transistor_rank.assign(p.transistors.size(), unseen);
      tr.wire_order.reserve(p.wires.size());
      tr.transistor_order.reserve(p.transistors.size());
      std::size_t head = 0;
      auto        see_transistor = [&](Attachment const& a) {
        if (a.on_transistor() && tr.transistor_rank[a.transistor] == unseen) {
          tr.transistor_rank[a.transistor]
              = static_cast<std::uint32_t>(tr.transistor_order.size());
          tr.transistor_order.push_back(a.transistor);
        }
      };
      auto see_wire = [&](WireId w) {
        if (tr.wire_rank[w] == unseen) {
          tr.wire_rank[w] = static_cast<std::uint32_t>(tr.wire_order.size());
          tr.wire_order.push_back(w);
          see_transistor(p.wires[w].top_end);
          see_transistor(p.wires[w].bottom_end);
        }
      };
      for (auto w : p.top_ports) {
        see_wire(w);
      }
      while (head < tr.transistor_order.size()) {
        auto const& t = p.transistors[tr.transistor_order[head++]];
        for (auto w : t.top) {
          see_wire(w);
        }
        for (auto w : t.bottom) {
          see_wire(w);
        }
      }
      return tr;
    }

    inline void put(std::string& out, std::uint32_t v) {
      for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
      }
    }
  }  // namespace detail

  //! Byte string identifying the diagram up to equivalence (exact) or up to
  //! right composition with a permutation diagram (klass).  The annular flag
  //! is not part of the key.
  [[nodiscard]] inline std::string canonical_key(Diagram const& d,
                                                 KeyMode mode = KeyMode::exact) {
    auto const& p  = d.parts();
    auto        tr = detail::traverse(d);
    std::string out;
    out.reserve(16 + 8 * p.transistors.size() + 24 * p.wires.size());
    detail::put(out, static_cast<std::uint32_t>(p.wires.size()));
    detail::put(out, static_cast<std::uint32_t>(p.transistors.size()));
    detail::put(out, static_cast<std::uint32_t>(p.top_ports.size()));
    for (auto t : tr.transistor_order) {
      auto const& x = p.transistors[t];
      detail::put(out, x.relation * 2 + (x.positive ? 1 : 0));
    }
    auto end = [&](Attachment const& a, bool bottom_frame) {
      std::uint32_t code = static_cast<std::uint32_t>(a.site);
      if (a.on_transistor()) {
        detail::put(out, code | (tr.transistor_rank[a.transistor] << 2));
        detail::put(out, a.index);
      } else if (bottom_frame && mode == KeyMode::klass) {
        detail::put(out, code);
      } else {
        detail::put(out, code);
        detail::put(out, a.index);
      }
    };
    for (auto w : tr.wire_order) {
      auto const& x = p.wires[w];
      detail::put(out, x.label);
      auto const& g = x.coeff;
      if (g.kind() == GroupKind::cyclic) {
        detail::put(out, static_cast<std::uint32_t>(g.residue()));
      } else if (g.kind() == GroupKind::free) {
        detail::put(out, static_cast<std::uint32_t>(g.word().size()));
        for (auto s : g.word()) {
          detail::put(out, static_cast<std::uint32_t>(s));
        }
      }
      end(x.top_end, false);
      end(x.bottom_end, x.bottom_end.site == Site::frame_bottom);
    }
    return out;
  }

  //! Hex rendering of a key, for logs and graph labels.
  [[nodiscard]] inline std::string key_hex(std::string const& key,
                                           std::size_t        max_chars = 0) {
    // FNV-1a digest so that short prefixes still separate keys
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : key) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    static char const digits[] = "0123456789abcdef";
    std::string       out;
    for (int i = 15; i >= 0; --i) {
      out.push_back(digits[(h >> (4 * i)) & 0xF]);
    }
    if (max_chars != 0 && max_chars < out.size()) {
      out.resize(max_chars);
    }
    return out;
  }

  //! The member of d's class whose bottom ports follow the traversal order.
  [[nodiscard]] inline Diagram normalize_class(Diagram const& d) {
    auto         tr = detail::traverse(d);
    DiagramParts p  = d.parts();
    std::sort(p.bottom_ports.begin(),
              p.bottom_ports.end(),
              [&](WireId a, WireId b) { return tr.wire_rank[a] < tr.wire_rank[b]; });
    for (std::uint32_t k = 0; k < p.bottom_ports.size(); ++k) {
      p.wires[p.bottom_ports[k]].bottom_end.index = k;
    }
    return Diagram::trusted(std::move(p));
  }

  //! Relabels wire and transistor ids in traversal order, leaving the port
  //! orders alone; equivalent diagrams become identical data.
  [[nodiscard]] inline Diagram renumber_canonically(Diagram const& d) {
    auto         tr = detail::traverse(d);
    auto const&  p  = d.parts();
    DiagramParts out;
    out.signature = p.signature;
    out.annular   = p.annular;
    for (auto w : tr.wire_order) {
      auto x = p.wires[w];
      if (x.top_end.on_transistor()) {
        x.top_end.transistor = tr.transistor_rank[x.top_end.transistor];
      }
      if (x.bottom_end.on_transistor()) {
        x.bottom_end.transistor = tr.transistor_rank[x.bottom_end.transistor];
      }
      out.wires.push_back(std::move(x));
    }
    for (auto t : tr.transistor_order) {
      auto x = p.transistors[t];
      for (auto& w : x.top) {
        w = tr.wire_rank[w];
      }
      for (auto& w : x.bottom) {
        w = tr.wire_rank[w];
      }
      out.transistors.push_back(std::move(x));
    }
    for (auto w : p.top_ports) {
      out.top_ports.push_back(tr.wire_rank[w]);
    }
    for (auto w : p.bottom_ports) {
      out.bottom_ports.push_back(tr.wire_rank[w]);
    }
    return Diagram::trusted(std::move(out));
  }

}  // namespace picturecalc
