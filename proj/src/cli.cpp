#include "patbreak/cli.hpp"

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "patbreak/cegar.hpp"
#include "patbreak/greedy.hpp"
#include "patbreak/metrics.hpp"
#include "patbreak/ramsey.hpp"
#include "patbreak/util.hpp"

namespace patbreak {

namespace {

RamseyInstance parse_problem(const std::string& text, Order order) {
  if (text.rfind("ramsey:", 0) != 0)
    throw std::invalid_argument("unknown problem spec: " + text +
                                " (expected ramsey:S,T)");
  std::string body = text.substr(7);
  size_t comma = body.find(',');
  if (comma == std::string::npos)
    throw std::invalid_argument("expected ramsey:S,T");
  int s = std::stoi(body.substr(0, comma));
  int t = std::stoi(body.substr(comma + 1));
  return RamseyInstance(s, t, order);
}

std::vector<PermClass> parse_layers(const std::string& text) {
  std::vector<PermClass> layers;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) layers.push_back(parse_class(item));
  return layers;
}

void write_text_or_file(const std::string& text, const std::string& path,
                        std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open " + path + " for writing");
  file << text;
  if (!file) throw std::runtime_error("write failed: " + path);
}

std::string format_ratio(double r) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << r;
  return s.str();
}

bool sweep_possible(Order o, bool big) { return o.n <= 7 || (o.n == 8 && big); }

// Tool path resolution: environment variables override configured paths.
std::string external_tool(const char* env_name, const std::string& flag_value) {
  if (const char* env = std::getenv(env_name); env && *env) return env;
  return flag_value;
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& stem)
      : path("/tmp/" + stem + "." + std::to_string(::getpid()) + ".cnf") {}
  ~TempFile() { std::remove(path.c_str()); }
};

// Adds the projection comment and exports problem + break clauses.
void export_counting_cnf(const std::string& path, Order order,
                         const sat::CnfFormula* problem, const PatternSet* psi) {
  sat::Encoder enc;
  std::vector<int> edge_vars(order.edge_count());
  for (int& v : edge_vars) v = enc.new_var();
  if (problem)
    for (const auto& c : problem->clauses) enc.add_clause(c);
  if (psi && !psi->empty()) {
    XorRegistry xors;
    encode_not_covered(enc, *psi, edge_vars, xors);
  }
  std::ostringstream proj;
  proj << "projected-vars";
  for (int v : edge_vars) proj << ' ' << v;
  enc.cnf.comments.insert(enc.cnf.comments.begin(), proj.str());
  std::ostringstream emap;
  emap << "edge-vars";
  for (int p = 1; p <= order.edge_count(); ++p) {
    auto [i, j] = edge_pair(p, order);
    emap << ' ' << p << "={" << i << ',' << j << '}';
  }
  enc.cnf.comments.insert(enc.cnf.comments.begin() + 1, emap.str());
  sat::export_dimacs(enc.cnf, path);
}

struct PatternsOpts {
  int order = 0;
  std::string cls = "all";
  bool dominating = false;
  bool census = false;
  std::string out_path;
  std::uint64_t budget = kDefaultEnumBudget;
  int workers = default_workers();
};

int run_patterns(const PatternsOpts& opt, std::ostream& out) {
  Order o(opt.order);
  PermClass c = parse_class(opt.cls);
  if (opt.census) {
    PatternCensus row = census(o, c, opt.budget, opt.workers);
    std::ostringstream line;
    line << row.order.n << ',' << class_name(row.cls) << ',' << row.total << ','
         << row.dominating << '\n';
    write_text_or_file(line.str(), opt.out_path, out);
    return 0;
  }
  PatternSet set = all_patterns(o, c, opt.budget);
  if (opt.dominating) set = dominators(set, opt.workers);
  write_text_or_file(write_pattern_file(set, class_name(c)), opt.out_path, out);
  return 0;
}

struct GreedyOpts {
  int order = 0;
  bool half = false;
  bool ct_prefix = false;
  std::string out_path;
  int workers = default_workers();
};

int run_greedy(const GreedyOpts& opt, std::ostream& out) {
  Order o(opt.order);
  GreedyResult res = symbreak_greedy(o, opt.workers);
  std::size_t keep = res.picks.size();
  std::string header = "greedy complete";
  if (opt.half) {
    keep = res.picks.size() / 2;
    header = "greedy partial (first 50%)";
  } else if (opt.ct_prefix) {
    keep = 0;
    while (keep < res.picks.size()) {
      const auto& prov = res.picks[keep].pattern.provenance();
      if (!prov || smallest_class(prov->perm) != PermClass::Ct) break;
      ++keep;
    }
    header = "greedy ct prefix";
  }
  res.picks.resize(keep);
  write_text_or_file(write_pattern_file(res.to_pattern_set(), header),
                     opt.out_path, out);
  return 0;
}

struct CegarOpts {
  int order = 0;
  std::string layers = "ct,t,ci+t,di,i,all";
  bool no_layers = false;
  bool reduce = false;
  std::string problem;
  std::string stats_path;
  std::string out_path;
  int workers = default_workers();
  bool big = false;
};

void warn_big_sweep(Order o, bool big, std::ostream& err) {
  if (big && o.n == 8)
    err << "note: n=8 sweeps walk 2^28 graphs; expect tens of seconds\n";
}

int run_cegar(const CegarOpts& opt, std::ostream& out, std::ostream& err) {
  Order o(opt.order);
  warn_big_sweep(o, opt.big, err);
  CegarOptions options;
  options.layers = opt.no_layers ? std::vector<PermClass>{PermClass::All}
                                 : parse_layers(opt.layers);
  options.reduce = opt.reduce;
  std::optional<RamseyInstance> inst;
  std::optional<sat::CnfFormula> problem;
  std::optional<GraphPredicate> predicate;
  if (!opt.problem.empty()) {
    inst = parse_problem(opt.problem, o);
    problem = ramsey_clauses(*inst);
    predicate = ramsey_predicate(*inst);
  }
  CegarRun run = layered_cegar(o, options, problem ? &*problem : nullptr);

  if (!opt.stats_path.empty()) {
    std::ostringstream csv;
    csv << "layer,iterations,patterns,ratio,seconds\n";
    for (const auto& lr : run.layers) {
      csv << class_name(lr.cls) << ',' << lr.iterations << ',' << lr.psi_size_after
          << ',';
      if (sweep_possible(o, opt.big))
        csv << format_ratio(redundancy_ratio(lr.psi_snapshot, o,
                                             predicate ? &*predicate : nullptr,
                                             opt.workers, opt.big));
      else
        csv << "n/a";
      csv << ',' << format_ratio(lr.seconds) << '\n';
    }
    write_text_or_file(csv.str(), opt.stats_path, out);
  }
  std::string header = "cegar layers=" +
                       (opt.no_layers ? std::string("all") : opt.layers) +
                       (opt.reduce ? " reduced" : "") +
                       (opt.problem.empty() ? "" : " problem=" + opt.problem);
  write_text_or_file(write_pattern_file(run.psi, header), opt.out_path, out);
  return 0;
}

struct ProfileOpts {
  int order = 0;
  std::string break_path;
  std::string problem;
  bool json = false;
  bool csv = false;
  std::string emit_cnf;
  bool use_counter = false;
  std::string counter_path;
  int workers = default_workers();
  bool big = false;
};

int run_profile(const ProfileOpts& opt, std::ostream& out, std::ostream& err) {
  PatternSet psi = load_pattern_file(opt.break_path);
  Order o = psi.order();
  if (opt.order != 0 && opt.order != o.n)
    throw std::invalid_argument("--order disagrees with the break file");
  warn_big_sweep(o, opt.big, err);
  std::optional<RamseyInstance> inst;
  std::optional<sat::CnfFormula> problem;
  std::optional<GraphPredicate> predicate;
  if (!opt.problem.empty()) {
    inst = parse_problem(opt.problem, o);
    problem = ramsey_clauses(*inst);
    predicate = ramsey_predicate(*inst);
  }
  if (!opt.emit_cnf.empty())
    export_counting_cnf(opt.emit_cnf, o, problem ? &*problem : nullptr, &psi);
  if (opt.use_counter) {
    std::string tool = external_tool("PATBREAK_COUNTER", opt.counter_path);
    if (tool.empty())
      throw std::runtime_error(
          "no counter configured; set PATBREAK_COUNTER or pass --counter");
    TempFile tmp("patbreak_count");
    export_counting_cnf(tmp.path, o, problem ? &*problem : nullptr, &psi);
    auto count = sat::run_external_counter(tool, tmp.path);
    if (!count) throw std::runtime_error("external counter produced no count");
    out << "uncovered: " << *count << '\n';
    return 0;
  }
  if (!sweep_possible(o, opt.big)) {
    if (!opt.emit_cnf.empty()) {
      out << "order " << o.n
          << " exceeds the exhaustive bound; counting CNF written to "
          << opt.emit_cnf << '\n';
      return 0;
    }
    throw std::runtime_error(
        "order too large for exhaustive profiling; use --emit-cnf or "
        "--use-counter with an external counter");
  }
  BreakProfile prof =
      profile(psi, o, predicate ? &*predicate : nullptr, opt.workers, opt.big);
  if (opt.json) {
    nlohmann::json j;
    j["order"] = o.n;
    j["size"] = prof.size;
    j["ct"] = prof.class_hist[0];
    j["t"] = prof.class_hist[1];
    j["ci+t"] = prof.class_hist[2];
    j["di"] = prof.class_hist[3];
    j["i"] = prof.class_hist[4];
    j["rho"] = prof.rho;
    j["pct_ncc"] = prof.pct_ncc;
    j["uncovered"] = prof.uncovered;
    j["iso_classes"] = prof.iso_classes;
    out << j.dump(2) << '\n';
  } else if (opt.csv) {
    out << "order,size,ct,t,ci+t,di,i,rho,pct_ncc\n"
        << o.n << ',' << prof.size << ',' << prof.class_hist[0] << ','
        << prof.class_hist[1] << ',' << prof.class_hist[2] << ','
        << prof.class_hist[3] << ',' << prof.class_hist[4] << ','
        << format_ratio(prof.rho) << ',' << format_ratio(prof.pct_ncc) << '\n';
  } else {
    out << "order:       " << o.n << '\n'
        << "size:        " << prof.size << '\n'
        << "ct:          " << prof.class_hist[0] << '\n'
        << "t:           " << prof.class_hist[1] << '\n'
        << "ci+t:        " << prof.class_hist[2] << '\n'
        << "di:          " << prof.class_hist[3] << '\n'
        << "i:           " << prof.class_hist[4] << '\n'
        << "rho:         " << format_ratio(prof.rho) << '\n'
        << "pct_ncc:     " << format_ratio(prof.pct_ncc) << '\n'
        << "uncovered:   " << prof.uncovered << '\n'
        << "iso_classes: " << prof.iso_classes << '\n';
  }
  return 0;
}

struct RamseyOpts {
  int s = 0, t = 0, order = 0;
  std::string break_path;
  std::string layers;
  bool count = false;
  std::string emit_cnf;
  bool csv = false;
  bool use_solver = false;
  std::string solver_path;
  std::uint64_t model_budget = kDefaultModelBudget;
  int workers = default_workers();
};

int run_ramsey(const RamseyOpts& opt, std::ostream& out) {
  RamseyInstance inst(opt.s, opt.t, Order(opt.order));
  std::optional<PatternSet> psi;
  std::string break_name = "none";
  if (!opt.break_path.empty() && !opt.layers.empty())
    throw std::invalid_argument("--break and --layers are mutually exclusive");
  if (!opt.break_path.empty()) {
    psi = load_pattern_file(opt.break_path);
    if (psi->order() != inst.order)
      throw std::invalid_argument("break file order disagrees with --order");
    break_name = opt.break_path;
  } else if (!opt.layers.empty()) {
    CegarOptions options;
    options.layers = parse_layers(opt.layers);
    psi = tailored_break(inst, options).psi;
    break_name = "layers:" + opt.layers;
  }
  if (!opt.emit_cnf.empty()) {
    sat::CnfFormula problem = ramsey_clauses(inst);
    export_counting_cnf(opt.emit_cnf, inst.order, &problem,
                        psi ? &*psi : nullptr);
  }
  if (opt.use_solver) {
    std::string tool = external_tool("PATBREAK_SOLVER", opt.solver_path);
    if (tool.empty())
      throw std::runtime_error(
          "no solver configured; set PATBREAK_SOLVER or pass --solver");
    TempFile tmp("patbreak_solve");
    sat::CnfFormula problem = ramsey_clauses(inst);
    export_counting_cnf(tmp.path, inst.order, &problem, psi ? &*psi : nullptr);
    auto res = sat::run_external_solver(tool, tmp.path);
    if (!res) throw std::runtime_error("external solver produced no status line");
    if (!res->sat) {
      out << "UNSAT\n";
      return 0;
    }
    GraphBits g(inst.order);
    for (int lit : res->model)
      if (std::abs(lit) <= inst.order.edge_count())
        g.set(std::abs(lit), lit > 0);
    out << "SAT " << g.to_string() << '\n';
    return 0;
  }
  if (opt.count || opt.csv) {
    Stopwatch watch;
    CountResult res = count_solutions(inst, psi ? &*psi : nullptr, opt.model_budget);
    if (res.truncated)
      throw std::runtime_error("model enumeration budget exceeded at " +
                               std::to_string(res.count) +
                               " models; raise --models");
    if (opt.csv)
      out << opt.s << ',' << opt.t << ',' << opt.order << ',' << break_name << ','
          << res.count << ',' << format_ratio(watch.seconds()) << '\n';
    else
      out << res.count << '\n';
  }
  return 0;
}

}  // namespace

int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"symmetry breaks for graph search from graph patterns"};
  app.name("patbreak");
  app.require_subcommand(1);

  PatternsOpts popt;
  auto* patterns = app.add_subcommand("patterns", "enumerate graph patterns");
  patterns->add_option("--order", popt.order, "graph order")->required();
  patterns->add_option("--class", popt.cls, "permutation class: ct|t|ci+t|di|i|all");
  patterns->add_flag("--dominating", popt.dominating, "keep dominating patterns only");
  patterns->add_flag("--census", popt.census, "emit order,class,total,dominating");
  patterns->add_option("--out", popt.out_path, "output file (default stdout)");
  patterns->add_option("--budget", popt.budget, "enumeration budget");
  patterns->add_option("--workers", popt.workers, "sweep worker count");

  GreedyOpts gopt;
  auto* greedy = app.add_subcommand("greedy", "greedy set-cover symmetry break");
  greedy->add_option("--order", gopt.order, "graph order")->required();
  greedy->add_flag("--half", gopt.half, "keep the first 50% of the picks");
  greedy->add_flag("--ct-prefix", gopt.ct_prefix, "keep the all-ct prefix");
  greedy->add_option("--out", gopt.out_path, "output file (default stdout)");
  greedy->add_option("--workers", gopt.workers, "sweep worker count");

  CegarOpts copt;
  auto* cegar = app.add_subcommand("cegar", "layered CEGAR symmetry break");
  cegar->add_option("--order", copt.order, "graph order")->required();
  cegar->add_option("--layers", copt.layers, "comma-separated layer prefix");
  cegar->add_flag("--no-layers", copt.no_layers, "single unrestricted layer");
  cegar->add_flag("--reduce", copt.reduce, "remove redundant patterns");
  cegar->add_option("--problem", copt.problem, "restrict to a problem (ramsey:S,T)");
  cegar->add_option("--stats", copt.stats_path, "write layer stats CSV");
  cegar->add_option("--out", copt.out_path, "output file (default stdout)");
  cegar->add_option("--workers", copt.workers, "sweep worker count");
  cegar->add_flag("--big", copt.big, "allow the n=8 exhaustive sweep");

  ProfileOpts fopt;
  auto* prof = app.add_subcommand("profile", "profile a symmetry break");
  prof->add_option("--order", fopt.order, "graph order (checked against the file)");
  prof->add_option("--break", fopt.break_path, "pattern file")->required();
  prof->add_option("--problem", fopt.problem, "restrict to a problem (ramsey:S,T)");
  prof->add_flag("--json", fopt.json, "JSON output");
  prof->add_flag("--csv", fopt.csv, "CSV output");
  prof->add_option("--emit-cnf", fopt.emit_cnf, "export counting CNF");
  prof->add_flag("--use-counter", fopt.use_counter,
                 "count uncovered graphs with an external model counter");
  prof->add_option("--counter", fopt.counter_path,
                   "counter executable (PATBREAK_COUNTER overrides)");
  prof->add_option("--workers", fopt.workers, "sweep worker count");
  prof->add_flag("--big", fopt.big, "allow the n=8 exhaustive sweep");

  RamseyOpts ropt;
  auto* ramsey = app.add_subcommand("ramsey", "Ramsey graph search R(s,t;n)");
  ramsey->add_option("--s", ropt.s, "clique bound")->required();
  ramsey->add_option("--t", ropt.t, "independent set bound")->required();
  ramsey->add_option("--order", ropt.order, "graph order")->required();
  ramsey->add_option("--break", ropt.break_path, "pattern file to apply");
  ramsey->add_option("--layers", ropt.layers, "tailored break through these layers");
  ramsey->add_flag("--count", ropt.count, "count surviving solutions");
  ramsey->add_option("--emit-cnf", ropt.emit_cnf, "export instance CNF");
  ramsey->add_flag("--csv", ropt.csv, "CSV output s,t,n,break,count,seconds");
  ramsey->add_flag("--use-solver", ropt.use_solver,
                   "decide the instance with an external SAT solver");
  ramsey->add_option("--solver", ropt.solver_path,
                     "solver executable (PATBREAK_SOLVER overrides)");
  ramsey->add_option("--models", ropt.model_budget, "model enumeration budget");
  ramsey->add_option("--workers", ropt.workers, "sweep worker count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return 2;
  }

  try {
    if (patterns->parsed()) return run_patterns(popt, out);
    if (greedy->parsed()) return run_greedy(gopt, out);
    if (cegar->parsed()) return run_cegar(copt, out, err);
    if (prof->parsed()) return run_profile(fopt, out, err);
    if (ramsey->parsed()) return run_ramsey(ropt, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << "no subcommand\n";
  return 2;
}

}  // namespace patbreak
