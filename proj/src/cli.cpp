#include "grafrec/cli.hpp"

#include <charconv>
#include <cstdio>
#include <ostream>
#include <utility>

#include <CLI11.hpp>

#include "grafrec/ars.hpp"
#include "grafrec/errors.hpp"
#include "grafrec/graph.hpp"
#include "grafrec/hetnet.hpp"
#include "grafrec/io.hpp"
#include "grafrec/pagerank.hpp"
#include "grafrec/session.hpp"

namespace grafrec {

namespace {

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string fmt_score(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", v);
  return buf;
}

RatingScale parse_scale(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0 || colon + 1 == text.size())
    throw Error(Errc::bad_config, "expected --scale MIN:MAX");
  auto to_int = [&](const std::string& s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size())
      throw Error(Errc::bad_config, "bad scale bound '" + s + "'");
    return v;
  };
  return RatingScale{to_int(text.substr(0, colon)),
                     to_int(text.substr(colon + 1))};
}

void print_rank_report(std::ostream& out, const RankState& state,
                       const NameMap& names) {
  for (const RankedPage& p : rank_positions(state)) {
    out << p.position << "\t" << names.label(p.node) << "\t"
        << fmt_score(p.score) << "\n";
  }
}

const std::vector<std::string> kRepNames = {
    "edge-list", "adjacency-matrix", "incidence-matrix", "adjacency-list",
    "incidence-list"};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"graph-based recommendation engine"};
  app.require_subcommand(1);

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "Check a session graph file");
  std::string v_graph, v_classes;
  validate_cmd->add_option("--graph", v_graph, "session graph file")
      ->required();
  validate_cmd->add_option("--classes", v_classes, "kernel class file");

  CLI::App* ars_cmd =
      app.add_subcommand("ars", "Recommend objects around a query object");
  std::string a_graph, a_object, a_class;
  long long a_top = 0;
  ars_cmd->add_option("--graph", a_graph, "session graph file")->required();
  ars_cmd->add_option("--object", a_object, "query object")->required();
  ars_cmd->add_option("--class", a_class, "restrict kernels to this class");
  ars_cmd->add_option("--top", a_top, "keep the N best objects")
      ->check(CLI::NonNegativeNumber);

  CLI::App* pr_cmd = app.add_subcommand("pagerank", "Rank a link graph");
  std::string p_edges, p_variant = "damped", p_method = "iterative",
              p_dangling = "error";
  double p_d = 0, p_epsilon = 0.01;
  int p_max_iter = 100, p_steps = 0;
  pr_cmd->add_option("--edges", p_edges, "link graph file")->required();
  pr_cmd->add_option("--variant", p_variant, "update rule")
      ->check(CLI::IsMember({"basic", "damped"}));
  pr_cmd->add_option("--d", p_d, "damping factor");
  pr_cmd->add_option("--epsilon", p_epsilon, "per-page stop margin");
  pr_cmd->add_option("--max-iter", p_max_iter, "iteration cap");
  pr_cmd->add_option("--steps", p_steps, "run exactly N update steps")
      ->check(CLI::NonNegativeNumber);
  pr_cmd->add_option("--method", p_method, "iterative or linear")
      ->check(CLI::IsMember({"iterative", "linear"}));
  pr_cmd->add_option("--dangling", p_dangling, "no-outlink policy")
      ->check(CLI::IsMember({"error", "uniform"}));

  CLI::App* pgrec_cmd =
      app.add_subcommand("pgrec", "Preference graph tools");
  pgrec_cmd->require_subcommand(1);
  CLI::App* build_cmd = pgrec_cmd->add_subcommand(
      "build", "Build the tripartite preference graph from ratings");
  std::string b_ratings, b_scale, b_out;
  build_cmd->add_option("--ratings", b_ratings, "ratings CSV")->required();
  build_cmd->add_option("--scale", b_scale, "rating scale MIN:MAX")
      ->required();
  build_cmd->add_option("--out", b_out, "output graph file")->required();

  CLI::App* mp_cmd =
      app.add_subcommand("metapath", "Count or recommend along a meta-path");
  std::string m_graph, m_pattern, m_start;
  bool m_recommend = false;
  long long m_top = 0;
  mp_cmd->add_option("--graph", m_graph, "het graph file")->required();
  mp_cmd->add_option("--pattern", m_pattern, "node-type letters, e.g. UOU")
      ->required();
  mp_cmd->add_option("--start", m_start, "start node")->required();
  mp_cmd->add_flag("--recommend", m_recommend,
                   "score unrated objects via the walks");
  mp_cmd->add_option("--top", m_top, "keep the N best objects")
      ->check(CLI::NonNegativeNumber);

  CLI::App* conv_cmd =
      app.add_subcommand("convert", "Re-encode a graph file");
  std::string c_in, c_from, c_to, c_out;
  conv_cmd->add_option("--in", c_in, "input graph file")->required();
  conv_cmd->add_option("--from", c_from, "input representation")
      ->required()
      ->check(CLI::IsMember(kRepNames));
  conv_cmd->add_option("--to", c_to, "output representation")
      ->required()
      ->check(CLI::IsMember(kRepNames));
  conv_cmd->add_option("--out", c_out, "output file (default stdout)");

  CLI::App* prof_cmd =
      app.add_subcommand("profile", "Memory cost of a representation");
  std::string f_kind;
  unsigned long long f_n = 0, f_e = 0;
  prof_cmd->add_option("--kind", f_kind, "representation")
      ->required()
      ->check(CLI::IsMember(kRepNames));
  prof_cmd->add_option("--n", f_n, "node count")->required();
  prof_cmd->add_option("--e", f_e, "arc count")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*validate_cmd) {
      ParsedSession ps = parse_session_file(v_graph, false);
      if (validate_cmd->count("--classes")) {
        if (ps.graph.partition()) {
          throw Error(Errc::bad_config,
                      "classes given both inline and via --classes");
        }
        KernelClassPartition part = parse_classes_file(v_classes, ps.names);
        ps.graph = SessionGraph::build(ps.graph.kernels(), ps.graph.objects(),
                                       ps.graph.graph().arcs(),
                                       std::move(part));
      }
      const std::vector<Violation> found = validate_session_graph(ps.graph);
      for (const Violation& v : found)
        out << format_violation(v, ps.names) << "\n";
      return found.empty() ? 0 : 1;
    }

    if (*ars_cmd) {
      ParsedSession ps = parse_session_file(a_graph, true);
      auto object = ps.names.find(a_object);
      if (!object)
        throw Error(Errc::unknown_object, "unknown object '" + a_object + "'");
      ArsQuery q;
      q.object = *object;
      if (ars_cmd->count("--class")) q.class_filter = a_class;
      if (ars_cmd->count("--top")) q.top_n = static_cast<std::size_t>(a_top);
      const RecommendationVector recs = ars_recommend(ps.graph, q);
      for (std::size_t i = 0; i < recs.size(); ++i) {
        out << i + 1 << "\t" << ps.names.label(recs[i].object) << "\t"
            << recs[i].score << "\n";
      }
      return 0;
    }

    if (*pr_cmd) {
      ParsedLink pl = parse_link_file(p_edges);
      const bool linear = p_method == "linear";
      PageRankConfig cfg;
      if (pr_cmd->count("--variant")) {
        cfg.variant = p_variant == "basic" ? PageRankVariant::Basic
                                           : PageRankVariant::Damped;
      } else {
        cfg.variant =
            linear ? PageRankVariant::Basic : PageRankVariant::Damped;
      }
      cfg.d = cfg.variant == PageRankVariant::Basic ? 1.0 : 0.85;
      if (pr_cmd->count("--d")) cfg.d = p_d;
      cfg.epsilon = p_epsilon;
      cfg.max_iter = p_max_iter;
      cfg.dangling = p_dangling == "uniform"
                         ? DanglingPolicy::UniformRedistribute
                         : DanglingPolicy::Error;
      if (linear) {
        if (cfg.variant != PageRankVariant::Basic)
          throw Error(Errc::bad_config,
                      "the linear method solves the basic variant only");
        if (cfg.d != 1.0)
          throw Error(Errc::bad_config, "the linear method fixes d at 1");
        if (cfg.dangling != DanglingPolicy::Error)
          throw Error(Errc::bad_config,
                      "the linear method requires --dangling error");
        if (pr_cmd->count("--steps"))
          throw Error(Errc::bad_config,
                      "--steps does not apply to the linear method");
        const RankState st = solve_linear(pl.graph);
        out << "# pagerank method=linear variant=basic d=1 iterations=0"
               " converged=yes\n";
        print_rank_report(out, st, pl.names);
        return 0;
      }
      const char* variant_name =
          cfg.variant == PageRankVariant::Basic ? "basic" : "damped";
      if (pr_cmd->count("--steps")) {
        const RankState st = pagerank_iterate(pl.graph, cfg, p_steps);
        out << "# pagerank method=iterative variant=" << variant_name
            << " d=" << fmt_g(cfg.d) << " steps=" << p_steps
            << " iterations=" << st.iterations << " converged=no\n";
        print_rank_report(out, st, pl.names);
      } else {
        const RankState st = pagerank_run(pl.graph, cfg);
        out << "# pagerank method=iterative variant=" << variant_name
            << " d=" << fmt_g(cfg.d) << " epsilon=" << fmt_g(cfg.epsilon)
            << " max-iter=" << cfg.max_iter << " iterations=" << st.iterations
            << " converged=" << (st.converged ? "yes" : "no") << "\n";
        print_rank_report(out, st, pl.names);
      }
      return 0;
    }

    if (*build_cmd) {
      const RatingScale scale = parse_scale(b_scale);
      ParsedRatings pr = parse_ratings_file(b_ratings, scale);
      PGRecGraph pg = build_pgrec(pr.matrix);
      for (const PreferenceNode& p : pg.preferences) {
        pr.names.bind(p.id, "p:" + pr.names.label(p.plus_object) + ":" +
                                pr.names.label(p.minus_object));
      }
      write_file(b_out, serialize_het(pg.graph, pr.names));
      out << "users=" << pr.matrix.users().size()
          << " objects=" << pr.matrix.objects().size()
          << " preferences=" << pg.preferences.size()
          << " edges=" << pg.graph.edge_count() << "\n";
      return 0;
    }

    if (*mp_cmd) {
      ParsedHet ph = parse_het_file(m_graph);
      const MetaPathPattern pattern = MetaPathPattern::parse(m_pattern);
      auto start = ph.names.find(m_start);
      if (!start)
        throw Error(Errc::unknown_node, "unknown node '" + m_start + "'");
      if (mp_cmd->count("--top") && !m_recommend)
        throw Error(Errc::bad_config, "--top only applies with --recommend");
      if (m_recommend) {
        std::optional<std::size_t> top;
        if (mp_cmd->count("--top")) top = static_cast<std::size_t>(m_top);
        const RecommendationVector recs =
            recommend_via_metapath(ph.graph, *start, pattern, top);
        for (std::size_t i = 0; i < recs.size(); ++i) {
          out << i + 1 << "\t" << ph.names.label(recs[i].object) << "\t"
              << recs[i].score << "\n";
        }
      } else {
        for (const auto& [node, count] : match_metapath(ph.graph, pattern,
                                                        *start)) {
          out << ph.names.label(node) << "\t" << count << "\n";
        }
      }
      return 0;
    }

    if (*conv_cmd) {
      const RepKind from = *rep_kind_from_string(c_from);
      const RepKind to = *rep_kind_from_string(c_to);
      ParsedLink pl = parse_representation_file(c_in, from);
      const std::string text =
          serialize_representation(pl.graph.convert_to(to), pl.names);
      if (conv_cmd->count("--out")) {
        write_file(c_out, text);
      } else {
        out << text;
      }
      return 0;
    }

    if (*prof_cmd) {
      const MemoryProfile p =
          memory_profile(*rep_kind_from_string(f_kind), f_n, f_e);
      out << "kind=" << to_string(p.kind) << " n=" << p.nodes
          << " e=" << p.arcs << " cells=" << p.cells
          << " class=" << to_string(p.asymptotic_class) << "\n";
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_format_error(e.code()) ? 2 : 1;
  }
  return 2;
}

}  // namespace grafrec
