#pragma once

#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "canonical.hpp"
#include "qmgraph.hpp"

namespace picturecalc {

  using Json = nlohmann::ordered_json;

  //! Structurally invalid document; names the offending field.
  class FormatError : public Error {
   public:
    FormatError(std::string const& field, std::string const& what)
        : Error(field + ": " + what), _field(field) {}

    [[nodiscard]] std::string const& field() const noexcept {
      return _field;
    }

   private:
    std::string _field;
  };

  ////////////////////////////////////////////////////////////////////////
  // Diagrams
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline Json site_to_json(Attachment const& a) {
      switch (a.site) {
        case Site::frame_top:
          return "frame_top";
        case Site::frame_bottom:
          return "frame_bottom";
        case Site::transistor_top:
          return Json{{"transistor", a.transistor}, {"side", "top"}};
        case Site::transistor_bottom:
          return Json{{"transistor", a.transistor}, {"side", "bottom"}};
      }
      return nullptr;
    }

    inline Attachment site_from_json(Json const& end, std::string const& field) {
      if (!end.is_object() || !end.contains("site") || !end.contains("index")) {
        throw FormatError(field, "expected {site, index}");
      }
      Attachment a;
      auto const& s = end["site"];
      if (!end["index"].is_number_unsigned()) {
        throw FormatError(field + ".index", "expected a nonnegative integer");
      }
      a.index = end["index"].get<std::uint32_t>();
      if (s == "frame_top") {
        a.site = Site::frame_top;
      } else if (s == "frame_bottom") {
        a.site = Site::frame_bottom;
      } else if (s.is_object() && s.contains("transistor") && s.contains("side")
                 && s["transistor"].is_number_unsigned()
                 && (s["side"] == "top" || s["side"] == "bottom")) {
        a.transistor = s["transistor"].get<std::uint32_t>();
        a.site = s["side"] == "top" ? Site::transistor_top : Site::transistor_bottom;
      } else {
        throw FormatError(field + ".site",
                          R"(expected "frame_top", "frame_bottom" or {transistor, side})");
      }
      return a;
    }

    template <typename T>
    T required(Json const& j, char const* key, std::string const& field) {
      if (!j.contains(key)) {
        throw FormatError(field + "." + key, "missing");
      }
      try {
        return j[key].template get<T>();
      } catch (nlohmann::json::exception const& e) {
        throw FormatError(field + "." + key, e.what());
      }
    }
  }  // namespace detail

  //! The file form of a diagram, with wires and transistors in canonical
  //! order so that equivalent diagrams give identical documents.
  [[nodiscard]] inline Json diagram_to_json(Diagram const& d) {
    auto const  c    = renumber_canonically(d);
    auto const& pres = c.presentation();
    auto const& cs   = c.coefficients();
    Json        out;
    out["presentation"] = to_string(pres);
    Json coeffs         = Json::object();
    for (LetterId a = 0; a < pres.number_of_letters(); ++a) {
      coeffs[pres.name(a)] = cs[a].to_string();
    }
    out["coeffs"] = std::move(coeffs);
    Json wires    = Json::array();
    for (auto const& w : c.wires()) {
      wires.push_back({{"label", pres.name(w.label)},
                       {"coeff", cs[w.label].format(w.coeff)},
                       {"bottom", {{"site", detail::site_to_json(w.bottom_end)}, {"index", w.bottom_end.index}}},
                       {"top", {{"site", detail::site_to_json(w.top_end)}, {"index", w.top_end.index}}}});
    }
    out["wires"]   = std::move(wires);
    Json trans     = Json::array();
    for (auto const& t : c.transistors()) {
      trans.push_back({{"rel", t.relation}, {"dir", t.positive ? "+" : "-"}});
    }
    out["transistors"] = std::move(trans);
    out["annular"]     = c.annular();
    return out;
  }

  //! Rebuilds and validates a diagram from its file form.  Transistor wire
  //! lists and frame port orders are recovered from the wire ends.
  [[nodiscard]] inline Diagram diagram_from_json(Json const& j) {
    if (!j.is_object()) {
      throw FormatError("diagram", "expected an object");
    }
    auto pres  = parse_presentation(detail::required<std::string>(j, "presentation", "diagram"));
    auto specs = CoefficientSystem::trivial(pres.number_of_letters());
    if (j.contains("coeffs")) {
      auto const& cj = j["coeffs"];
      if (!cj.is_object()) {
        throw FormatError("diagram.coeffs", "expected an object from letter to group");
      }
      for (auto const& [name, spec] : cj.items()) {
        auto letter = pres.letter(name);
        if (!letter) {
          throw FormatError("diagram.coeffs." + name, "unknown letter");
        }
        if (!spec.is_string()) {
          throw FormatError("diagram.coeffs." + name, "expected a group string");
        }
        specs.set(*letter, GroupSpec::from_string(spec.get<std::string>()));
      }
    }
    DiagramParts p;
    p.signature = make_signature(pres, specs);
    if (!j.contains("wires") || !j["wires"].is_array()) {
      throw FormatError("diagram.wires", "expected an array");
    }
    if (j.contains("transistors") && !j["transistors"].is_array()) {
      throw FormatError("diagram.transistors", "expected an array");
    }
    auto const& tj = j.contains("transistors") ? j["transistors"] : Json::array();
    for (std::size_t t = 0; t < tj.size(); ++t) {
      auto field = "diagram.transistors[" + std::to_string(t) + "]";
      auto rel   = detail::required<std::size_t>(tj[t], "rel", field);
      auto dir   = detail::required<std::string>(tj[t], "dir", field);
      if (rel >= pres.number_of_relations()) {
        throw FormatError(field + ".rel", "no such relation");
      }
      if (dir != "+" && dir != "-") {
        throw FormatError(field + ".dir", R"(expected "+" or "-")");
      }
      Transistor x;
      x.relation = static_cast<RelationId>(rel);
      x.positive = dir == "+";
      x.top.assign(pres.top_side(x.relation, x.positive).size(), 0);
      x.bottom.assign(pres.bottom_side(x.relation, x.positive).size(), 0);
      p.transistors.push_back(std::move(x));
    }
    auto const&       wj = j["wires"];
    std::vector<bool> top_seen, bottom_seen;
    auto place = [&](std::vector<WireId>& list, std::vector<bool>& seen, std::size_t index,
                     WireId w, std::string const& field) {
      if (index >= list.size()) {
        list.resize(index + 1, 0);
        seen.resize(index + 1, false);
      }
      if (seen[index]) {
        throw FormatError(field, "two wires at one contact");
      }
      seen[index] = true;
      list[index] = w;
    };
    std::vector<std::vector<bool>> t_top(p.transistors.size()), t_bottom(p.transistors.size());
    for (std::size_t t = 0; t < p.transistors.size(); ++t) {
      t_top[t].assign(p.transistors[t].top.size(), false);
      t_bottom[t].assign(p.transistors[t].bottom.size(), false);
    }
    auto attach = [&](Attachment const& a, WireId w, std::string const& field) {
      switch (a.site) {
        case Site::frame_top:
          place(p.top_ports, top_seen, a.index, w, field);
          return;
        case Site::frame_bottom:
          place(p.bottom_ports, bottom_seen, a.index, w, field);
          return;
        default:
          break;
      }
      if (a.transistor >= p.transistors.size()) {
        throw FormatError(field, "no such transistor");
      }
      auto& x    = p.transistors[a.transistor];
      auto& list = a.site == Site::transistor_top ? x.top : x.bottom;
      auto& seen = a.site == Site::transistor_top ? t_top[a.transistor] : t_bottom[a.transistor];
      if (a.index >= list.size()) {
        throw FormatError(field, "contact index beyond the relation side");
      }
      if (seen[a.index]) {
        throw FormatError(field, "two wires at one contact");
      }
      seen[a.index]  = true;
      list[a.index]  = w;
    };
    for (std::size_t i = 0; i < wj.size(); ++i) {
      auto field = "diagram.wires[" + std::to_string(i) + "]";
      auto label = detail::required<std::string>(wj[i], "label", field);
      auto l     = pres.letter(label);
      if (!l) {
        throw FormatError(field + ".label", "unknown letter '" + label + "'");
      }
      Wire w;
      w.label = *l;
      w.coeff = specs[*l].identity();
      if (wj[i].contains("coeff")) {
        auto const& c = wj[i]["coeff"];
        w.coeff = specs[*l].parse(c.is_string() ? c.get<std::string>() : c.dump());
      }
      if (!wj[i].contains("bottom") || !wj[i].contains("top")) {
        throw FormatError(field, "missing top or bottom end");
      }
      w.bottom_end = detail::site_from_json(wj[i]["bottom"], field + ".bottom");
      w.top_end    = detail::site_from_json(wj[i]["top"], field + ".top");
      auto id      = static_cast<WireId>(p.wires.size());
      p.wires.push_back(w);
      attach(w.top_end, id, field + ".top");
      attach(w.bottom_end, id, field + ".bottom");
    }
    auto complete = [](std::vector<bool> const& seen) {
      return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
    };
    if (!complete(top_seen) || !complete(bottom_seen)) {
      throw FormatError("diagram.wires", "frame ports are not numbered consecutively");
    }
    for (std::size_t t = 0; t < p.transistors.size(); ++t) {
      if (!complete(t_top[t]) || !complete(t_bottom[t])) {
        throw FormatError("diagram.transistors[" + std::to_string(t) + "]",
                          "contact without a wire");
      }
    }
    p.annular = j.value("annular", false);
    return Diagram(std::move(p));
  }

  [[nodiscard]] inline std::string to_json_text(Diagram const& d) {
    return diagram_to_json(d).dump(2) + "\n";
  }

  [[nodiscard]] inline Diagram diagram_from_text(std::string const& text) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (nlohmann::json::parse_error const& e) {
      throw ParseError(std::string("malformed JSON: ") + e.what(), e.byte == 0 ? 0 : e.byte - 1);
    }
    return diagram_from_json(j);
  }

  ////////////////////////////////////////////////////////////////////////
  // Balls
  ////////////////////////////////////////////////////////////////////////

  namespace detail {
    inline char const* geometry_name(Geometry g) {
      switch (g) {
        case Geometry::planar:
          return "planar";
        case Geometry::annular:
          return "annular";
        case Geometry::braided:
          return "braided";
      }
      return "";
    }

    inline Json move_to_json(BallGraph const& g, Move const& m, std::size_t from) {
      Json out;
      if (m.kind == Move::Kind::transistor) {
        out["kind"]     = "transistor";
        out["rel"]      = m.relation;
        out["dir"]      = m.positive ? "+" : "-";
        out["wires"]    = m.positions;
        return out;
      }
      auto const& rep    = g.rep(from);
      auto        letter = rep.wire(rep.bottom_ports()[m.positions.front()]).label;
      out["kind"]        = "linear";
      out["wire"]        = m.positions.front();
      out["letter"]      = rep.presentation().name(letter);
      out["delta"]       = rep.coefficients()[letter].format(m.delta);
      return out;
    }
  }  // namespace detail

  //! Vertices with keys, lengths and representatives, and edges with their
  //! kinds and witnessing moves.
  [[nodiscard]] inline Json ball_to_json(BallGraph const& g) {
    Json out;
    auto const& pres = g.signature->presentation;
    out["presentation"] = to_string(pres);
    Json coeffs         = Json::object();
    for (LetterId a = 0; a < pres.number_of_letters(); ++a) {
      coeffs[pres.name(a)] = g.signature->coefficients[a].to_string();
    }
    out["coeffs"]   = std::move(coeffs);
    out["word"]     = pres.format_word(g.base);
    out["geometry"] = detail::geometry_name(g.geometry);
    out["radius"]   = g.radius;
    Json vs         = Json::array();
    for (std::size_t v = 0; v < g.size(); ++v) {
      auto const& x = g.ball.vertices[v];
      vs.push_back({{"id", v},
                    {"key", key_hex(x.key)},
                    {"distance", x.distance},
                    {"length", reduced_length(x.rep)},
                    {"bottom", pres.format_word(x.rep.bottom_word())},
                    {"rep", diagram_to_json(x.rep)}});
    }
    out["vertices"] = std::move(vs);
    Json es         = Json::array();
    for (auto const& e : g.ball.edges) {
      es.push_back({{"from", e.from}, {"to", e.to}, {"move", detail::move_to_json(g, e.move, e.from)}});
    }
    out["edges"] = std::move(es);
    return out;
  }

  //! Graphviz form: vertices labelled by key prefix and length, transistor
  //! edges solid, linear edges dashed and annotated.
  [[nodiscard]] inline std::string ball_to_dot(BallGraph const& g) {
    std::ostringstream os;
    os << "graph ball {\n  node [shape=box, fontname=monospace];\n";
    for (std::size_t v = 0; v < g.size(); ++v) {
      auto const& x = g.ball.vertices[v];
      os << "  v" << v << " [label=\"" << key_hex(x.key, 8) << "\\nlen " << reduced_length(x.rep)
         << "\"];\n";
    }
    for (auto const& e : g.ball.edges) {
      os << "  v" << e.from << " -- v" << e.to;
      if (e.move.kind == Move::Kind::linear) {
        auto const& rep    = g.rep(e.from);
        auto        letter = rep.wire(rep.bottom_ports()[e.move.positions.front()]).label;
        os << " [style=dashed, label=\"(" << rep.presentation().name(letter) << ", "
           << rep.coefficients()[letter].format(e.move.delta) << ")\"]";
      }
      os << ";\n";
    }
    os << "}\n";
    return os.str();
  }

}  // namespace picturecalc
