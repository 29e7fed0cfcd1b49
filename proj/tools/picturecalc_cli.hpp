#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "picturecalc.hpp"

namespace picturecalc::cli {

  enum ExitCode : int { ok = 0, counterexample = 1, input_error = 2 };

  //! Failure caused by the command line or an input file.
  class InputError : public Error {
   public:
    using Error::Error;
  };

  namespace detail {
    inline std::string read_file(std::string const& path) {
      std::ifstream in(path, std::ios::binary);
      if (!in) {
        throw InputError("cannot read '" + path + "'");
      }
      std::ostringstream ss;
      ss << in.rdbuf();
      return ss.str();
    }

    //! Writes through a temporary file and a rename so readers never see a
    //! partial file.
    inline void write_file(std::string const& path, std::string const& text) {
      auto          tmp = path + ".tmp";
      {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out || !(out << text)) {
          throw InputError("cannot write '" + path + "'");
        }
      }
      std::error_code ec;
      std::filesystem::rename(tmp, path, ec);
      if (ec) {
        throw InputError("cannot write '" + path + "': " + ec.message());
      }
    }

    inline void emit(std::ostream& out, std::string const& path, std::string const& text) {
      if (path.empty() || path == "-") {
        out << text;
      } else {
        write_file(path, text);
      }
    }

    inline Diagram read_diagram(std::string const& path) {
      return diagram_from_text(read_file(path));
    }
  }  // namespace detail

  //! Presentation, base word, coefficients and geometry shared by the
  //! subcommands.
  struct RunConfig {
    std::string              builtin;
    std::string              presentation;  // literal text or a file path
    std::string              word;
    std::vector<std::string> coeffs;        // letter=spec
    std::string              geometry = "braided";
    std::uint64_t            seed     = 20240601;

    [[nodiscard]] bool has_presentation() const {
      return !builtin.empty() || !presentation.empty();
    }

    [[nodiscard]] Geometry geometry_value() const {
      if (geometry == "braided") {
        return Geometry::braided;
      }
      if (geometry == "annular") {
        return Geometry::annular;
      }
      if (geometry == "planar") {
        return Geometry::planar;
      }
      throw InputError("unknown geometry '" + geometry + "'");
    }

    //! The signature and base word this configuration names.
    [[nodiscard]] std::pair<SignaturePtr, Word> resolve() const {
      if (!builtin.empty() && !presentation.empty()) {
        throw InputError("give either --builtin or --presentation, not both");
      }
      std::optional<Presentation> pres;
      Word                        base;
      if (!builtin.empty()) {
        auto b = parse_builtin(builtin);
        pres   = b.presentation;
        base   = b.baseword;
      } else if (!presentation.empty()) {
        auto text = presentation.front() == '<' ? presentation : detail::read_file(presentation);
        while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
          text.pop_back();
        }
        pres = parse_presentation(text);
      } else {
        throw InputError("a presentation is required (--builtin or --presentation)");
      }
      if (!word.empty()) {
        base = pres->parse_word(word);
      }
      if (base.empty()) {
        throw InputError("a base word is required (--word)");
      }
      auto specs = CoefficientSystem::trivial(pres->number_of_letters());
      for (auto const& c : coeffs) {
        auto eq = c.find('=');
        if (eq == std::string::npos) {
          throw InputError("--coeff expects letter=group, got '" + c + "'");
        }
        auto letter = pres->letter(c.substr(0, eq));
        if (!letter) {
          throw InputError("--coeff names unknown letter '" + c.substr(0, eq) + "'");
        }
        specs.set(*letter, GroupSpec::from_string(c.substr(eq + 1)));
      }
      return {make_signature(*pres, std::move(specs)), std::move(base)};
    }
  };

  namespace detail {
    inline void add_config(CLI::App* app, RunConfig& cfg, bool word = true) {
      app->add_option("--builtin", cfg.builtin, "builtin presentation, name[:p1,p2,...]");
      app->add_option("--presentation", cfg.presentation, "presentation text or file");
      if (word) {
        app->add_option("--word", cfg.word, "base word");
      }
      app->add_option("--coeff", cfg.coeffs, "coefficient group, letter=trivial|cyclic:k|free:r");
      app->add_option("--geometry", cfg.geometry, "braided, annular or planar")
          ->check(CLI::IsMember({"braided", "annular", "planar"}));
    }

    //! The diagram's presentation must match the configured one when both
    //! are present.
    inline void check_presentation(RunConfig const& cfg, Diagram const& d) {
      if (!cfg.has_presentation()) {
        return;
      }
      auto [sig, base] = cfg.resolve();
      if (to_string(sig->presentation) != to_string(d.presentation())) {
        throw InputError("the diagram is over " + to_string(d.presentation()) + ", not "
                         + to_string(sig->presentation));
      }
      if (!cfg.word.empty() && d.top_word() != base) {
        throw InputError("the diagram's top word is not '" + cfg.word + "'");
      }
    }

    inline Json report_json(std::vector<Counterexample> const& vs) {
      Json out = Json::array();
      for (auto const& v : vs) {
        out.push_back({{"kind", v.kind}, {"vertices", v.vertices}});
      }
      return out;
    }
  }  // namespace detail

  //! Runs the batch front end; returns the process exit code.
  inline int run(std::vector<std::string> args,
                 std::ostream&            out = std::cout,
                 std::ostream&            err = std::cerr) {
    CLI::App app{"Diagram groups, picture products and their embeddings", "picturecalc"};
    app.require_subcommand(1);
    RunConfig cfg;

    std::string in, in2, out_path, dot_path, json_path, pair_text, at_text;
    std::size_t radius = 2, budget = 2, m_max = 4, plus_budget = 2, samples = 0;
    bool        embedded = false;

    auto* reduce_cmd = app.add_subcommand("reduce", "reduce a diagram, print its length");
    reduce_cmd->add_option("--in", in, "diagram file")->required();
    reduce_cmd->add_option("--out", out_path, "output file");

    auto* multiply_cmd = app.add_subcommand("multiply", "product of two diagrams");
    multiply_cmd->add_option("--in", in, "upper diagram file")->required();
    multiply_cmd->add_option("--in2", in2, "lower diagram file")->required();
    multiply_cmd->add_option("--out", out_path, "output file");

    auto* embed_cmd = app.add_subcommand("embed", "image under the universal embedding");
    detail::add_config(embed_cmd, cfg);
    embed_cmd->add_option("--in", in, "diagram file")->required();
    embed_cmd->add_option("--out", out_path, "output file");

    auto* project_cmd = app.add_subcommand("project", "tree pair of the embedded diagram");
    detail::add_config(project_cmd, cfg);
    project_cmd->add_option("--in", in, "diagram file")->required();
    project_cmd->add_flag("--embedded", embedded, "the input is already an embedded image");

    auto* thompson_cmd = app.add_subcommand("thompson", "tree-pair utilities");
    thompson_cmd->require_subcommand(1);
    auto* eval_cmd = thompson_cmd->add_subcommand("eval", "evaluate a tree pair at an n-adic point");
    eval_cmd->add_option("--pair", pair_text, "tree pair text")->required();
    eval_cmd->add_option("--at", at_text, "point k/n^m in [0,1)")->required();

    auto* ball_cmd = app.add_subcommand("ball", "finite ball of the class graph");
    detail::add_config(ball_cmd, cfg);
    ball_cmd->add_option("--radius", radius, "ball radius");
    ball_cmd->add_option("--dot", dot_path, "Graphviz output file");
    ball_cmd->add_option("--json", json_path, "JSON output file");

    auto* verify_cmd = app.add_subcommand("verify", "check the geometry of a finite ball");
    detail::add_config(verify_cmd, cfg);
    verify_cmd->add_option("--radius", radius, "ball radius");
    verify_cmd->add_option("--m-max", m_max, "longest word for condition (+)");
    verify_cmd->add_option("--budget", plus_budget, "search length for condition (+)");
    verify_cmd->add_option("--samples", samples, "random far pairs for the geodesic check");
    verify_cmd->add_option("--seed", cfg.seed, "seed for the random pairs");
    verify_cmd->add_option("--out", out_path, "report file");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "reduced diagrams up to a length");
    detail::add_config(enumerate_cmd, cfg);
    enumerate_cmd->add_option("--budget", budget, "largest length");
    enumerate_cmd->add_option("--out", out_path, "output file");

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
      app.parse(rev);
    } catch (CLI::CallForHelp const&) {
      out << app.help();
      return ok;
    } catch (CLI::ParseError const& e) {
      err << "error: " << e.what() << "\n";
      return input_error;
    }

    try {
      if (*reduce_cmd) {
        auto d = reduce(detail::read_diagram(in));
        if (out_path.empty()) {
          out << to_json_text(d);
        } else {
          detail::write_file(out_path, to_json_text(d));
          out << reduced_length(d) << "\n";
        }
        return ok;
      }
      if (*multiply_cmd) {
        auto d = multiply(detail::read_diagram(in), detail::read_diagram(in2));
        detail::emit(out, out_path, to_json_text(d));
        return ok;
      }
      if (*embed_cmd) {
        auto d = detail::read_diagram(in);
        detail::check_presentation(cfg, d);
        detail::emit(out, out_path, to_json_text(psi(d)));
        return ok;
      }
      if (*project_cmd) {
        auto d = detail::read_diagram(in);
        detail::check_presentation(cfg, d);
        auto tp = embedded ? project_to_thompson(d) : project(d);
        out << format_tree_pair(tp) << " " << to_string(membership(tp)) << "\n";
        return ok;
      }
      if (*eval_cmd) {
        auto tp = parse_tree_pair(pair_text);
        auto q  = parse_nadic(at_text, static_cast<std::uint32_t>(tp.arity()));
        out << format_nadic(evaluate_map(tp, q)) << "\n";
        return ok;
      }
      auto [sig, base] = cfg.resolve();
      auto geometry    = cfg.geometry_value();
      if (*ball_cmd) {
        auto g = ball(sig, base, radius, geometry);
        if (!dot_path.empty()) {
          detail::write_file(dot_path, ball_to_dot(g));
        }
        if (!json_path.empty() || dot_path.empty()) {
          detail::emit(out, json_path, ball_to_json(g).dump(2) + "\n");
        }
        return ok;
      }
      if (*verify_cmd) {
        auto g     = ball(sig, base, radius, geometry);
        auto ax    = verify_qm_axioms(g);
        auto pins  = pins_report(g);
        auto hyper = hyperplanes_report(g);
        auto edges = verify_edges(g);
        auto sq    = verify_squares(g);
        auto gc    = verify_geodesic_count(g);
        auto dist  = verify_distances(g);
        bool pass  = ax.pass() && pins.pass() && hyper.pass() && edges.pass() && sq.pass()
                    && gc.pass() && dist.pass();
        Json rep;
        rep["vertices"] = g.size();
        rep["edges"]    = g.ball.edges.size();
        rep["axioms"]   = {{"pass", ax.pass()},
                           {"triangle_free", ax.triangle_free()},
                           {"triangles", ax.triangles},
                           {"triangle_checked", ax.triangle_checked},
                           {"triangle_skipped", ax.triangle_skipped},
                           {"quadrangle_checked", ax.quadrangle_checked},
                           {"quadrangle_skipped", ax.quadrangle_skipped},
                           {"violations", detail::report_json(ax.violations)}};
        if (ax.triangle_free()) {
          auto med = verify_medians(g);
          pass     = pass && med.pass();
          rep["medians"] = {{"pass", med.pass()},
                            {"triples_checked", med.triples_checked},
                            {"triples_skipped", med.triples_skipped},
                            {"violations", detail::report_json(med.violations)}};
        }
        rep["pins"]        = {{"pass", pins.pass()},
                              {"pins", pins.pins.size()},
                              {"incomplete", pins.incomplete},
                              {"violations", detail::report_json(pins.violations)}};
        rep["hyperplanes"] = {{"pass", hyper.pass()},
                              {"hyperplanes", hyper.hyperplanes.size()},
                              {"interior", hyper.interior},
                              {"squares", hyper.squares},
                              {"geodesics_checked", hyper.geodesics_checked},
                              {"geodesics_skipped", hyper.geodesics_skipped},
                              {"boundary_inconclusive", hyper.boundary_inconclusive},
                              {"violations", detail::report_json(hyper.violations)}};
        rep["edges_check"] = {{"pass", edges.pass()},
                              {"transistor_edges", edges.transistor_edges},
                              {"linear_edges", edges.linear_edges},
                              {"violations", detail::report_json(edges.violations)}};
        rep["squares"]     = {{"pass", sq.pass()},
                              {"squares", sq.squares},
                              {"violations", detail::report_json(sq.violations)}};
        rep["geodesic_count"] = {{"pass", gc.pass()},
                                 {"pairs", gc.pairs_checked},
                                 {"max", gc.max_geodesics},
                                 {"violations", detail::report_json(gc.violations)}};
        rep["distances"]   = {{"pass", dist.pass()},
                              {"pairs", dist.pairs},
                              {"violations", detail::report_json(dist.violations)}};
        bool any_linear = false;
        for (LetterId a = 0; a < sig->presentation.number_of_letters(); ++a) {
          any_linear = any_linear || !sig->coefficients[a].is_trivial();
        }
        if (any_linear) {
          auto plus = condition_plus_check(sig, base, m_max, plus_budget);
          rep["condition_plus"] = {{"words", plus.words.size()},
                                   {"permutations", plus.entries.size()},
                                   {"excluded", plus.excluded()},
                                   {"inconclusive", plus.inconclusive()}};
          Json probes = Json::array();
          for (std::size_t j = 0; j < hyper.hyperplanes.size(); ++j) {
            auto const& h = hyper.hyperplanes[j];
            if (!h.linear || !h.interior) {
              continue;
            }
            auto s = rotative_stab_probe(g, hyper, j, plus);
            if (s.refused) {
              probes.push_back({{"hyperplane", j}, {"refused", s.reason}});
              continue;
            }
            pass = pass && s.pass();
            probes.push_back({{"hyperplane", j},
                              {"label", "candidates under (+)"},
                              {"pass", s.pass()},
                              {"candidates", s.candidates},
                              {"regular", s.regular},
                              {"violations", detail::report_json(s.violations)}});
          }
          rep["stabilisers"] = std::move(probes);
        }
        if (samples > 0) {
          // geodesics between random vertices far outside the ball
          DiagramSampler sampler(sig, base, geometry, cfg.seed);
          std::size_t    bad = 0;
          for (std::size_t i = 0; i < samples; ++i) {
            auto a    = sampler.walk(6);
            auto b    = sampler.walk(6);
            auto path = geodesic(a, b, geometry);
            bool good = path.size() == pair_distance(a, b) + 1;
            for (std::size_t k = 1; k < path.size() && good; ++k) {
              good = pair_distance(path[k - 1], path[k]) == 1;
            }
            bad += !good;
          }
          pass = pass && bad == 0;
          rep["sampled_geodesics"] = {{"seed", cfg.seed}, {"pairs", samples}, {"failures", bad}};
        }
        rep["pass"] = pass;
        detail::emit(out, out_path, rep.dump(2) + "\n");
        return pass ? ok : counterexample;
      }
      if (*enumerate_cmd) {
        Json list = Json::array();
        for (auto const& d : enumerate_reduced(sig, base, budget, geometry)) {
          list.push_back(diagram_to_json(d));
        }
        detail::emit(out, out_path, list.dump(2) + "\n");
        return ok;
      }
    } catch (Error const& e) {
      err << "error: " << e.what() << "\n";
      return input_error;
    } catch (Json::exception const& e) {
      err << "error: " << e.what() << "\n";
      return input_error;
    }
    return input_error;
  }

  inline int run(int argc, char const* const* argv) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) {
      args.emplace_back(argv[i]);
    }
    return run(std::move(args));
  }

}  // namespace picturecalc::cli
