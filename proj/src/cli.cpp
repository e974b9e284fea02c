#include "flowcat/cli.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <omp.h>

#include "flowcat/error.hpp"
#include "flowcat/io.hpp"

namespace flowcat {
namespace {

GraphPtr shared_graph(const std::string& path) {
  return std::make_shared<const DirectedGraph>(load_graph(path));
}

const PosetCategory& as_poset(const CategoryPtr& c) {
  const auto* p = dynamic_cast<const PosetCategory*>(c.get());
  if (!p) throw Error(ErrorKind::InvalidArgument, c->spec() + " is not a poset category");
  return *p;
}

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::CapExceeded: return kExitCap;
    default: return kExitUsage;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"flowcat: graph moves, invariants and diagram categories"};
  app.require_subcommand(1);
  int code = kExitOk;

  std::string graph_path, other_path, spec_path, category, diagram_path, out_path, which;
  int bound = -1, samples = 32, field = 2, threads = 0;
  std::uint64_t seed = 0;
  bool list = false, dot = false, text = false, serial = false;

  auto* validate_cmd = app.add_subcommand("validate", "check a graph file");
  validate_cmd->add_option("graph", graph_path)->required();

  auto* inv_cmd = app.add_subcommand("invariants", "Parry-Sullivan number, Bowen-Franks group, flags");
  inv_cmd->add_option("graph", graph_path)->required();

  auto* move_cmd = app.add_subcommand("move", "apply a graph move");
  move_cmd->add_option("graph", graph_path)->required();
  move_cmd->add_option("spec", spec_path)->required();
  move_cmd->add_option("-o,--output", out_path, "write the moved graph here");

  auto* franks_cmd = app.add_subcommand("franks", "flow equivalence verdict for two graphs");
  franks_cmd->add_option("graph", graph_path)->required();
  franks_cmd->add_option("other", other_path)->required();

  auto* diag_cmd = app.add_subcommand("diagrams", "enumerate diagrams of a graph");
  diag_cmd->add_option("graph", graph_path)->required();
  diag_cmd->add_option("--category", category)->required();
  diag_cmd->add_option("--bound", bound, "largest object for finset/mat");
  diag_cmd->add_flag("--list", list, "print every diagram");

  auto* verify_cmd = app.add_subcommand("verify", "check the functor pair of a move");
  verify_cmd->add_option("graph", graph_path)->required();
  verify_cmd->add_option("spec", spec_path)->required();
  verify_cmd->add_option("--category", category)->required();
  verify_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", seed);
  verify_cmd->add_option("--bound", bound);
  verify_cmd->add_option("--threads", threads, "OpenMP threads (0 keeps the default)");
  verify_cmd->add_flag("--serial", serial, "run trials on one thread");

  auto* lpa_cmd = app.add_subcommand("lpa-check", "Leavitt relations for a diagram over F_q");
  lpa_cmd->add_option("graph", graph_path)->required();
  lpa_cmd->add_option("--field", field)->required();
  lpa_cmd->add_option("--diagram", diagram_path)->required();

  auto* report_cmd = app.add_subcommand("report", "worked cases: acyclic, poset, desing, cuntz");
  report_cmd->add_option("case", which)->required()->check(
      CLI::IsMember({"acyclic", "poset", "desing", "cuntz"}));
  report_cmd->add_option("graph", graph_path, "graph file (acyclic, poset)");
  report_cmd->add_option("--category", category, "default poset:chain2");
  report_cmd->add_flag("--text", text, "plain text instead of JSON");

  auto* render_cmd = app.add_subcommand("render", "Graphviz output");
  render_cmd->add_option("graph", graph_path)->required();
  render_cmd->add_flag("--dot", dot, "DOT format (the only one)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (validate_cmd->parsed()) {
      auto g = graph_from_json(parse_json(read_file(graph_path), "graph"), false);
      auto problems = validate(g);
      Json j{{"valid", problems.empty()}, {"problems", problems}};
      out << dump(j);
      code = problems.empty() ? kExitOk : kExitFailed;
    } else if (inv_cmd->parsed()) {
      out << dump(invariants_json(load_graph(graph_path)));
    } else if (move_cmd->parsed()) {
      auto g = load_graph(graph_path);
      auto res = apply_move(g, load_move_spec(spec_path, g));
      std::string text_out = dump(graph_to_json(res.graph));
      if (res.approximation) err << "note: truncated construction, depth-limited\n";
      if (out_path.empty())
        out << text_out;
      else
        write_file(out_path, text_out);
    } else if (franks_cmd->parsed()) {
      out << dump(franks_json(franks_equivalent(load_graph(graph_path), load_graph(other_path))));
    } else if (diag_cmd->parsed()) {
      auto cat = parse_category(category);
      auto g = shared_graph(graph_path);
      NodeBudget budget;
      EnumerateOptions o;
      o.bound = bound;
      o.budget = &budget;
      auto all = enumerate_diagrams(*cat, g, o);
      Json j{{"category", cat->spec()}, {"count", all.size()}};
      if (list) {
        j["diagrams"] = Json::array();
        for (const auto& d : all) j["diagrams"].push_back(diagram_to_json(*cat, d));
      }
      out << dump(j);
    } else if (verify_cmd->parsed()) {
      auto cat = parse_category(category);
      auto g = shared_graph(graph_path);
      auto pair = make_functor_pair(cat, g, load_move_spec(spec_path, *g));
      if (threads > 0) omp_set_num_threads(threads);
      EquivalenceOptions o;
      o.samples = samples;
      o.seed = seed;
      o.bound = bound;
      o.parallel = !serial;
      auto r = verify_equivalence(*pair, o);
      out << dump(report_json(r));
      code = r.inconclusive ? kExitCap : r.passed() ? kExitOk : kExitFailed;
    } else if (lpa_cmd->parsed()) {
      if (!is_small_prime(field))
        throw Error(ErrorKind::InvalidArgument, "--field must be one of 2, 3, 5, 7");
      MatCategory cat(field, 8);
      auto g = shared_graph(graph_path);
      auto d = diagram_from_json(parse_json(read_file(diagram_path), "diagram"), cat, g);
      auto cop = check_coproduct_condition(cat, d);
      if (auto bad = cop.first_failure()) {
        out << dump(Json{{"passed", false},
                         {"coproduct_condition", {{"vertex", bad->vertex}, {"reason", bad->reason}}}});
        code = kExitFailed;
      } else {
        auto ops = build_module_operators(cat, d);
        auto rel = check_leavitt_relations(ops);
        bool unital = check_unital_action(ops);
        Json j = relations_json(rel, unital);
        j["total_dim"] = ops.total_dim;
        out << dump(j);
        code = j["passed"].get<bool>() ? kExitOk : kExitFailed;
      }
    } else if (report_cmd->parsed()) {
      CaseReport r;
      auto cat = parse_category(category.empty() ? "poset:chain2" : category);
      auto need_graph = [&] {
        if (graph_path.empty())
          throw Error(ErrorKind::InvalidArgument, "report " + which + " needs a graph file");
        return load_graph(graph_path);
      };
      if (which == "acyclic") r = verify_acyclic_corollary(*cat, need_graph());
      else if (which == "poset") r = verify_poset_corollary(need_graph(), as_poset(cat));
      else if (which == "desing") r = desingularisation_counterexample(as_poset(cat));
      else r = cuntz_splice_report();
      out << (text ? case_text(r) : dump(case_json(r)));
      bool bad = r.verdict == "fail";
      code = bad ? kExitFailed : kExitOk;
    } else if (render_cmd->parsed()) {
      out << to_dot(load_graph(graph_path));
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return code;
}

}  // namespace flowcat
