#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "diagram.hpp"

namespace picturecalc {

  enum class GeometryClass : std::uint8_t {
    planar,
    annular_not_planar,
    braided_only
  };

  enum class DiagramKind : std::uint8_t { permutation, transistor, linear, general };

  [[nodiscard]] inline char const* to_string(GeometryClass g) {
    switch (g) {
      case GeometryClass::planar:
        return "planar";
      case GeometryClass::annular_not_planar:
        return "annular_not_planar";
      case GeometryClass::braided_only:
        return "braided_only";
    }
    return "";
  }

  [[nodiscard]] inline char const* to_string(DiagramKind k) {
    switch (k) {
      case DiagramKind::permutation:
        return "permutation";
      case DiagramKind::transistor:
        return "transistor";
      case DiagramKind::linear:
        return "linear";
      case DiagramKind::general:
        return "general";
    }
    return "";
  }

  namespace detail {

    //! Position at which `block` occurs in `cur` as a contiguous run (read
    //! cyclically when asked), or -1.
    inline std::ptrdiff_t find_run(std::vector<WireId> const& cur,
                                   std::vector<WireId> const& block,
                                   bool                       cyclic) {
      auto it = std::find(cur.begin(), cur.end(), block.front());
      if (it == cur.end()) {
        return -1;
      }
      auto const p = static_cast<std::size_t>(it - cur.begin());
      auto const n = cur.size();
      if (block.size() > n || (!cyclic && p + block.size() > n)) {
        return -1;
      }
      for (std::size_t k = 1; k < block.size(); ++k) {
        if (cur[(p + k) % n] != block[k]) {
          return -1;
        }
      }
      return static_cast<std::ptrdiff_t>(p);
    }

    //! Replaces the run of length `len` starting at p; a run wrapping past
    //! the end is first rotated to the front.
    inline void replace_run(std::vector<WireId>&       cur,
                            std::size_t                p,
                            std::size_t                len,
                            std::vector<WireId> const& with) {
      if (p + len > cur.size()) {
        std::rotate(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(p), cur.end());
        p = 0;
      }
      auto first = cur.begin() + static_cast<std::ptrdiff_t>(p);
      cur.erase(first, first + static_cast<std::ptrdiff_t>(len));
      cur.insert(cur.begin() + static_cast<std::ptrdiff_t>(p), with.begin(), with.end());
    }

    inline bool is_rotation(std::vector<WireId> const& a,
                            std::vector<WireId> const& b) {
      if (a.size() != b.size()) {
        return false;
      }
      if (a.empty()) {
        return true;
      }
      auto it = std::find(a.begin(), a.end(), b.front());
      if (it == a.end()) {
        return false;
      }
      auto p = static_cast<std::size_t>(it - a.begin());
      for (std::size_t k = 0; k < b.size(); ++k) {
        if (a[(p + k) % a.size()] != b[k]) {
          return false;
        }
      }
      return true;
    }

    //! Fires transistors greedily from the top frame down, each on a run of
    //! the current boundary that spells its top wires in order.  Returns the
    //! final boundary and whether every transistor fired.
    struct Sweep {
      bool                      complete;
      std::vector<WireId>       boundary;
      std::vector<TransistorId> order;
    };

    inline Sweep sweep(Diagram const& d, bool cyclic) {
      auto const&       ts = d.transistors();
      Sweep             s{false, d.top_ports(), {}};
      std::vector<bool> fired(ts.size(), false);
      bool              progress = true;
      while (progress) {
        progress = false;
        for (TransistorId t = 0; t < ts.size(); ++t) {
          if (fired[t]) {
            continue;
          }
          auto p = find_run(s.boundary, ts[t].top, cyclic);
          if (p < 0) {
            continue;
          }
          replace_run(s.boundary, static_cast<std::size_t>(p), ts[t].top.size(), ts[t].bottom);
          fired[t] = true;
          s.order.push_back(t);
          progress = true;
        }
      }
      s.complete = s.order.size() == ts.size();
      return s;
    }
  }  // namespace detail

  [[nodiscard]] inline bool is_planar(Diagram const& d) {
    auto s = detail::sweep(d, false);
    return s.complete && s.boundary == d.bottom_ports();
  }

  [[nodiscard]] inline bool is_annular(Diagram const& d) {
    auto s = detail::sweep(d, true);
    return s.complete && detail::is_rotation(s.boundary, d.bottom_ports());
  }

  [[nodiscard]] inline GeometryClass classify_geometry(Diagram const& d) {
    if (is_planar(d)) {
      return GeometryClass::planar;
    }
    return is_annular(d) ? GeometryClass::annular_not_planar
                         : GeometryClass::braided_only;
  }

  [[nodiscard]] inline bool has_geometry(Diagram const& d, Geometry g) {
    switch (g) {
      case Geometry::planar:
        return is_planar(d);
      case Geometry::annular:
        return is_annular(d);
      case Geometry::braided:
        return true;
    }
    return true;
  }

  [[nodiscard]] inline DiagramKind classify_kind(Diagram const& d) {
    auto nt = d.number_of_transistors();
    auto nw = d.number_of_nontrivial_wires();
    if (nt == 0 && nw == 0) {
      return DiagramKind::permutation;
    }
    if (nt + nw == 1 && is_planar(d)) {
      return nt == 1 ? DiagramKind::transistor : DiagramKind::linear;
    }
    return DiagramKind::general;
  }

}  // namespace picturecalc
