// Command-line front end: computes ergotropy/capacity bounds on named,
// file-based or sampled instances and emits deterministic CSV/JSON with full
// provenance headers.
#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "qbat/analytic.hpp"
#include "qbat/choi.hpp"
#include "qbat/direct_opt.hpp"
#include "qbat/ergotropy.hpp"
#include "qbat/errors.hpp"
#include "qbat/io_json.hpp"
#include "qbat/sampling.hpp"
#include "qbat/witness.hpp"

using namespace qbat;
using nlohmann::json;

namespace {

constexpr const char* kVersion = "qbat 1.0.0";

struct Config {
  std::string command;
  std::uint64_t seed = 1;
  int restarts = tol::kDefaultRestarts;
  int jobs = 1;
  std::string out;  // empty = stdout
  std::string format = "csv";
  int dps_level = 0;
  double tol = 0.0;  // 0 = solver defaults
  std::string state_spec;
  std::string ham_spec;
  std::string sample_dims;
  int count = 1;
  std::string grid = "0:1:11";
  std::string bell = "psi-";

  std::string describe() const {
    std::ostringstream os;
    os << "command=" << command << " seed=" << seed << " restarts=" << restarts
       << " jobs=" << jobs << " format=" << format
       << " dps_level=" << dps_level << " tol=" << tol;
    if (!state_spec.empty()) os << " state=" << state_spec;
    if (!ham_spec.empty()) os << " ham=" << ham_spec;
    if (!sample_dims.empty()) os << " sample_dims=" << sample_dims;
    os << " count=" << count << " grid=" << grid << " bell=" << bell;
    return os.str();
  }
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  return parts;
}

double parse_real(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw InputError(where + ": cannot parse number '" + s + "'");
  }
}

Bell parse_bell(const std::string& s) {
  if (s == "phi+") return Bell::PhiPlus;
  if (s == "phi-") return Bell::PhiMinus;
  if (s == "psi+") return Bell::PsiPlus;
  if (s == "psi-") return Bell::PsiMinus;
  throw InputError("bell: expected one of phi+, phi-, psi+, psi-, got '" + s +
                   "'");
}

std::pair<int, int> parse_dims(const std::string& s) {
  auto parts = split(s, 'x');
  if (parts.size() != 2)
    throw InputError("dims: expected <d_a>x<d_b>, got '" + s + "'");
  int da = static_cast<int>(parse_real(parts[0], "dims"));
  int db = static_cast<int>(parse_real(parts[1], "dims"));
  if (da < 2 || db < 2) throw InputError("dims: local dimensions must be >= 2");
  return {da, db};
}

// grid spec "<lo>:<hi>:<n>" or comma list "0.1,0.2,0.3"
std::vector<double> parse_grid(const std::string& s) {
  if (s.find(',') != std::string::npos) {
    std::vector<double> g;
    for (const auto& part : split(s, ',')) g.push_back(parse_real(part, "grid"));
    return g;
  }
  auto parts = split(s, ':');
  if (parts.size() != 3)
    throw InputError("grid: expected <lo>:<hi>:<count> or a comma list");
  double lo = parse_real(parts[0], "grid");
  double hi = parse_real(parts[1], "grid");
  int n = static_cast<int>(parse_real(parts[2], "grid"));
  if (n < 1) throw InputError("grid: count must be >= 1");
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i)
    g[i] = n == 1 ? lo : lo + (hi - lo) * i / double(n - 1);
  return g;
}

QuantumState state_from_spec(const std::string& spec, const Config& cfg) {
  auto parts = split(spec, ':');
  if (parts[0] == "werner") {
    if (parts.size() < 2) throw InputError("state werner: expected werner:<p>");
    double p = parse_real(parts[1], "werner p");
    Bell b = parts.size() > 2 ? parse_bell(parts[2]) : parse_bell(cfg.bell);
    return werner_state(p, b);
  }
  if (parts[0] == "maxmixed") {
    if (parts.size() != 3)
      throw InputError("state maxmixed: expected maxmixed:<d_a>:<d_b>");
    int da = static_cast<int>(parse_real(parts[1], "d_a"));
    int db = static_cast<int>(parse_real(parts[2], "d_b"));
    QuantumState st;
    st.d_a = da;
    st.d_b = db;
    st.rho = identity(da * db) / double(da * db);
    st.validate();
    return st;
  }
  if (parts[0] == "bell") {
    Bell b = parse_bell(parts.size() > 1 ? parts[1] : cfg.bell);
    Vec v = bell_vector(b);
    QuantumState st;
    st.d_a = st.d_b = 2;
    st.rho = v * v.adjoint();
    st.validate();
    return st;
  }
  if (parts[0] == "ginibre") {
    if (parts.size() != 3)
      throw InputError("state ginibre: expected ginibre:<d_a>:<d_b>");
    int da = static_cast<int>(parse_real(parts[1], "d_a"));
    int db = static_cast<int>(parse_real(parts[2], "d_b"));
    Rng rng(cfg.seed, "cli/state");
    return ginibre_state(da, db, rng);
  }
  return load_state(spec);  // treat as a file path
}

BipartiteHamiltonian ham_from_spec(const std::string& spec, const Config& cfg) {
  auto parts = split(spec, ':');
  if (parts[0] == "antiferromagnet") {
    double omega = parts.size() > 1 ? parse_real(parts[1], "omega") : 1.0;
    int d = parts.size() > 2 ? static_cast<int>(parse_real(parts[2], "d")) : 2;
    return antiferromagnetic_hamiltonian(omega, d);
  }
  if (parts[0] == "flipflop") {
    if (parts.size() != 4)
      throw InputError("ham flipflop: expected flipflop:<w_a>:<w_b>:<g>");
    return flipflop_hamiltonian(parse_real(parts[1], "w_a"),
                                parse_real(parts[2], "w_b"),
                                parse_real(parts[3], "g"));
  }
  if (parts[0] == "bell-diagonal") {
    if (parts.size() != 5)
      throw InputError(
          "ham bell-diagonal: expected bell-diagonal:<e0>:<e1>:<e2>:<e3>");
    return bell_diagonal_hamiltonian(
        parse_real(parts[1], "e0"), parse_real(parts[2], "e1"),
        parse_real(parts[3], "e2"), parse_real(parts[4], "e3"));
  }
  if (parts[0] == "random") {
    if (parts.size() < 2)
      throw InputError("ham random: expected random:<d_a>x<d_b>[:local]");
    auto [da, db] = parse_dims(parts[1]);
    bool local = parts.size() > 2 && parts[2] == "local";
    Rng rng(cfg.seed, "cli/ham");
    return random_hamiltonian(da, db, local, rng);
  }
  return load_hamiltonian(spec);  // treat as a file path
}

SdpOptions sdp_options(const Config& cfg) {
  SdpOptions o;
  if (cfg.tol > 0.0) {
    o.gap_tol = cfg.tol;
    o.feas_tol = cfg.tol;
  }
  return o;
}

std::uint64_t instance_seed(std::uint64_t seed, int i) {
  return seed ^ fnv1a("instance/" + std::to_string(i));
}

// Run fn(i) for i in [0, n) across cfg.jobs threads; results land in
// preallocated slots, so output order is deterministic.
template <typename Fn>
void parallel_for(int n, int jobs, Fn&& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(jobs);
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&, t] {
      try {
        for (int i = next++; i < n; i = next++) fn(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

struct Output {
  std::ostream* os;
  std::ofstream file;
  explicit Output(const std::string& path) {
    if (path.empty()) {
      os = &std::cout;
    } else {
      file.open(path);
      if (!file) throw InputError(path + ": cannot open for writing");
      os = &file;
    }
  }
};

std::string provenance(const Config& cfg, const std::string& schema,
                       const std::string& columns,
                       const std::string& methods) {
  std::ostringstream os;
  os << "# " << kVersion << " schema=" << schema << "\n"
     << "# config: " << cfg.describe() << "\n"
     << "# columns: " << columns << "\n"
     << "# methods: " << methods << "\n";
  return os.str();
}

json provenance_json(const Config& cfg, const std::string& schema) {
  return json{{"tool", kVersion},
              {"schema", schema},
              {"config", cfg.describe()}};
}

// ---------------------------------------------------------------- bounds ---

struct BoundsRow {
  double e_global = 0.0;
  double pe_lower = 0.0;
  double pe_sdp = 0.0;
  bool sdp_branch = false;
  std::optional<double> pe_analytic;
  double capacity_lower = 0.0;
  std::string flags = "ok";
};

BoundsRow bounds_row(const QuantumState& st, const BipartiteHamiltonian& ham,
                     const Config& cfg, int index) {
  BoundsRow row;
  std::uint64_t s = instance_seed(cfg.seed, index);
  row.e_global = global_ergotropy(st, ham).value;
  row.pe_lower = pe_lower_bound(st, ham, cfg.restarts, s).value;
  PeSdpReport rep = pe_sdp_bound(st, ham, sdp_options(cfg), cfg.dps_level);
  row.pe_sdp = rep.usable_bound;
  row.sdp_branch = rep.sdp_branch;
  if (st.d_a == st.d_b && hypothesis_check(st, ham) != Hypothesis::Neither)
    row.pe_analytic = pe_upper_bound_lmm(st, ham).value;
  row.capacity_lower = parallel_capacity_lower(st, ham, cfg.restarts, s);
  std::vector<std::string> flags;
  const double slack = 1e-6;
  if (row.pe_lower > row.pe_sdp + slack) flags.push_back("lower-above-sdp");
  if (row.pe_analytic && row.pe_lower > *row.pe_analytic + slack)
    flags.push_back("lower-above-analytic");
  if (row.pe_sdp > row.e_global + slack) flags.push_back("sdp-above-global");
  if (row.pe_lower > row.capacity_lower + slack)
    flags.push_back("ergotropy-above-capacity");
  if (!flags.empty()) {
    row.flags.clear();
    for (size_t i = 0; i < flags.size(); ++i)
      row.flags += (i ? ";" : "") + flags[i];
  }
  return row;
}

int cmd_bounds(const Config& cfg) {
  std::vector<std::pair<QuantumState, BipartiteHamiltonian>> instances;
  if (!cfg.sample_dims.empty()) {
    auto [da, db] = parse_dims(cfg.sample_dims);
    for (int i = 0; i < cfg.count; ++i) {
      Rng rng(instance_seed(cfg.seed, i), "cli/sampled");
      QuantumState st = ginibre_state(da, db, rng);
      BipartiteHamiltonian ham = random_hamiltonian(da, db, false, rng);
      instances.emplace_back(std::move(st), std::move(ham));
    }
  } else {
    if (cfg.state_spec.empty() || cfg.ham_spec.empty())
      throw InputError(
          "bounds: provide --state and --ham, or --sample-dims with --count");
    instances.emplace_back(state_from_spec(cfg.state_spec, cfg),
                           ham_from_spec(cfg.ham_spec, cfg));
  }
  const int n = static_cast<int>(instances.size());
  std::vector<BoundsRow> rows(n);
  parallel_for(n, cfg.jobs, [&](int i) {
    rows[i] = bounds_row(instances[i].first, instances[i].second, cfg, i);
  });

  Output out(cfg.out);
  const std::string columns =
      "index,e_global,pe_lower,pe_sdp,pe_analytic,capacity_lower,flags";
  const std::string methods =
      "e_global=spectral-pairing pe_lower=product-unitary-search "
      "pe_sdp=min(choi-relaxation,global) pe_analytic=singular-value-bound "
      "capacity_lower=product-unitary-search";
  if (cfg.format == "json") {
    json j{{"provenance", provenance_json(cfg, "bounds-v1")},
           {"rows", json::array()}};
    for (int i = 0; i < n; ++i) {
      json r{{"index", i},
             {"e_global", rows[i].e_global},
             {"pe_lower", rows[i].pe_lower},
             {"pe_sdp", rows[i].pe_sdp},
             {"sdp_branch", rows[i].sdp_branch},
             {"capacity_lower", rows[i].capacity_lower},
             {"flags", rows[i].flags}};
      if (rows[i].pe_analytic) r["pe_analytic"] = *rows[i].pe_analytic;
      j["rows"].push_back(std::move(r));
    }
    *out.os << j.dump(2) << "\n";
  } else {
    *out.os << provenance(cfg, "bounds-v1", columns, methods);
    *out.os << columns << "\n";
    for (int i = 0; i < n; ++i) {
      *out.os << i << ',' << fmt(rows[i].e_global) << ','
              << fmt(rows[i].pe_lower) << ',' << fmt(rows[i].pe_sdp) << ','
              << (rows[i].pe_analytic ? fmt(*rows[i].pe_analytic) : "") << ','
              << fmt(rows[i].capacity_lower) << ',' << rows[i].flags << "\n";
    }
  }
  return 0;
}

// ---------------------------------------------------------- werner sweep ---

int cmd_werner_sweep(const Config& cfg) {
  BipartiteHamiltonian ham = ham_from_spec(cfg.ham_spec, cfg);
  if (ham.d_a != 2 || ham.d_b != 2)
    throw InputError("werner-sweep: requires a two-qubit Hamiltonian");
  Bell bell = parse_bell(cfg.bell);
  std::vector<double> grid = parse_grid(cfg.grid);
  const int n = static_cast<int>(grid.size());

  struct Row {
    double p, e_global, pe_sdp, pe_analytic, pe_direct, werner_closed;
  };
  std::vector<Row> rows(n);
  parallel_for(n, cfg.jobs, [&](int i) {
    QuantumState st = werner_state(grid[i], bell);
    Row& r = rows[i];
    r.p = grid[i];
    r.e_global = global_ergotropy(st, ham).value;
    r.pe_sdp = pe_sdp_bound(st, ham, sdp_options(cfg), cfg.dps_level)
                   .usable_bound;
    r.pe_analytic = pe_upper_bound_lmm(st, ham).value;
    r.pe_direct =
        pe_lower_bound(st, ham, cfg.restarts, instance_seed(cfg.seed, i)).value;
    r.werner_closed = werner_pe(grid[i], ham, bell);
  });

  Output out(cfg.out);
  const std::string columns =
      "p,e_global,pe_sdp,pe_analytic,pe_direct,werner_closed";
  const std::string methods =
      "e_global=spectral-pairing pe_sdp=min(choi-relaxation,global) "
      "pe_analytic=singular-value-bound pe_direct=product-unitary-search "
      "werner_closed=closed-form";
  if (cfg.format == "json") {
    json j{{"provenance", provenance_json(cfg, "werner-sweep-v1")},
           {"rows", json::array()}};
    for (const Row& r : rows)
      j["rows"].push_back({{"p", r.p},
                           {"e_global", r.e_global},
                           {"pe_sdp", r.pe_sdp},
                           {"pe_analytic", r.pe_analytic},
                           {"pe_direct", r.pe_direct},
                           {"werner_closed", r.werner_closed}});
    *out.os << j.dump(2) << "\n";
  } else {
    *out.os << provenance(cfg, "werner-sweep-v1", columns, methods);
    *out.os << columns << "\n";
    for (const Row& r : rows)
      *out.os << fmt(r.p) << ',' << fmt(r.e_global) << ',' << fmt(r.pe_sdp)
              << ',' << fmt(r.pe_analytic) << ',' << fmt(r.pe_direct) << ','
              << fmt(r.werner_closed) << "\n";
  }
  return 0;
}

// -------------------------------------------------------- random compare ---

int cmd_random_compare(const Config& cfg) {
  auto [da, db] = parse_dims(cfg.sample_dims.empty() ? "2x2" : cfg.sample_dims);
  int count = cfg.count;
  // runtime guardrail: the interior-point solve at two qutrits takes minutes
  // per instance, so cap the batch and say so upfront
  const double est_per_instance = (da * db >= 9) ? 130.0 : 2.0;
  const int cap = (da * db >= 9) ? 30 : 1000;
  if (count > cap) {
    std::cerr << "random-compare: capping count " << count << " -> " << cap
              << " at dims " << da << "x" << db << "\n";
    count = cap;
  }
  std::cerr << "random-compare: estimated runtime ~"
            << fmt(est_per_instance * count) << " s for " << count
            << " instances\n";

  struct Row {
    double lb, analytic_ub, sdp_ub, usable_ub, analytic_ratio, sdp_ratio;
    bool ppt_shortcut, sdp_branch;
  };
  std::vector<Row> rows(count);
  parallel_for(count, cfg.jobs, [&](int i) {
    Rng rng(instance_seed(cfg.seed, i), "cli/random-compare");
    QuantumState st = ginibre_state(da, db, rng);
    BipartiteHamiltonian ham = random_hamiltonian(da, db, false, rng);
    Row& r = rows[i];
    r.lb = pe_lower_bound(st, ham, cfg.restarts, instance_seed(cfg.seed, i))
               .value;
    r.analytic_ub = pe_upper_bound_lmm(st, ham).value;
    PeSdpReport rep = pe_sdp_bound(st, ham, sdp_options(cfg), cfg.dps_level);
    r.sdp_ub = rep.upper_bound;
    r.usable_ub = rep.usable_bound;
    r.ppt_shortcut = rep.ppt_shortcut;
    r.sdp_branch = rep.sdp_branch;
    r.analytic_ratio = r.lb > 0 ? r.analytic_ub / r.lb : 1.0;
    r.sdp_ratio = r.lb > 0 ? r.usable_ub / r.lb : 1.0;
  });

  Output out(cfg.out);
  const std::string columns =
      "index,pe_lower,analytic_ub,sdp_ub,usable_ub,analytic_ratio,sdp_ratio,"
      "ppt_shortcut,sdp_branch";
  const std::string methods =
      "pe_lower=product-unitary-search analytic_ub=singular-value-bound "
      "sdp_ub=choi-relaxation usable_ub=min(sdp,global)";
  if (cfg.format == "json") {
    json j{{"provenance", provenance_json(cfg, "random-compare-v1")},
           {"rows", json::array()}};
    for (int i = 0; i < count; ++i)
      j["rows"].push_back({{"index", i},
                           {"pe_lower", rows[i].lb},
                           {"analytic_ub", rows[i].analytic_ub},
                           {"sdp_ub", rows[i].sdp_ub},
                           {"usable_ub", rows[i].usable_ub},
                           {"analytic_ratio", rows[i].analytic_ratio},
                           {"sdp_ratio", rows[i].sdp_ratio},
                           {"ppt_shortcut", rows[i].ppt_shortcut},
                           {"sdp_branch", rows[i].sdp_branch}});
    *out.os << j.dump(2) << "\n";
  } else {
    *out.os << provenance(cfg, "random-compare-v1", columns, methods);
    *out.os << columns << "\n";
    for (int i = 0; i < count; ++i)
      *out.os << i << ',' << fmt(rows[i].lb) << ',' << fmt(rows[i].analytic_ub)
              << ',' << fmt(rows[i].sdp_ub) << ',' << fmt(rows[i].usable_ub)
              << ',' << fmt(rows[i].analytic_ratio) << ','
              << fmt(rows[i].sdp_ratio) << ',' << (rows[i].ppt_shortcut ? 1 : 0)
              << ',' << (rows[i].sdp_branch ? 1 : 0) << "\n";
  }
  return 0;
}

// --------------------------------------------------------------- witness ---

int cmd_witness(const Config& cfg) {
  QuantumState st = state_from_spec(cfg.state_spec, cfg);
  BipartiteHamiltonian ham = ham_from_spec(cfg.ham_spec, cfg);
  WitnessReport rep = witness_report(st, ham, cfg.restarts, cfg.seed);
  json j{{"provenance", provenance_json(cfg, "witness-v1")},
         {"report", witness_report_to_json(rep)}};
  Output out(cfg.out);
  *out.os << j.dump(2) << "\n";
  return 0;
}

// --------------------------------------------------------- threshold scan --

int cmd_threshold_scan(const Config& cfg) {
  BipartiteHamiltonian ham = ham_from_spec(cfg.ham_spec, cfg);
  if (ham.d_a != 2 || ham.d_b != 2)
    throw InputError("threshold-scan: requires a two-qubit Hamiltonian");
  Bell bell = parse_bell(cfg.bell);
  std::vector<double> grid = parse_grid(cfg.grid);
  const int n = static_cast<int>(grid.size());
  const double ceiling = capacity_ceiling_c1(ham, 32, cfg.seed);

  struct Row {
    double p, capacity;
    bool capacity_detects, fluctuation_detects;
  };
  std::vector<Row> rows(n);
  parallel_for(n, cfg.jobs, [&](int i) {
    QuantumState st = werner_state(grid[i], bell);
    Row& r = rows[i];
    r.p = grid[i];
    r.capacity = parallel_capacity_lower(st, ham, cfg.restarts,
                                         instance_seed(cfg.seed, i));
    r.capacity_detects = r.capacity > ceiling + tol::kDetectionMargin;
    r.fluctuation_detects = fluctuation_criterion(st, ham);
  });

  Output out(cfg.out);
  const std::string columns =
      "p,parallel_capacity,ceiling_c1,capacity_detects,fluctuation_detects";
  const std::string methods =
      "parallel_capacity=product-unitary-search ceiling_c1=entanglement-gap "
      "fluctuation=state-structure-criterion";
  if (cfg.format == "json") {
    json j{{"provenance", provenance_json(cfg, "threshold-scan-v1")},
           {"ceiling_c1", ceiling},
           {"rows", json::array()}};
    for (const Row& r : rows)
      j["rows"].push_back({{"p", r.p},
                           {"parallel_capacity", r.capacity},
                           {"capacity_detects", r.capacity_detects},
                           {"fluctuation_detects", r.fluctuation_detects}});
    *out.os << j.dump(2) << "\n";
  } else {
    *out.os << provenance(cfg, "threshold-scan-v1", columns, methods);
    *out.os << columns << "\n";
    for (const Row& r : rows)
      *out.os << fmt(r.p) << ',' << fmt(r.capacity) << ',' << fmt(ceiling)
              << ',' << (r.capacity_detects ? 1 : 0) << ','
              << (r.fluctuation_detects ? 1 : 0) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parallel-ergotropy and parallel-capacity bounds for bipartite "
               "quantum batteries"};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "RNG seed");
    sub->add_option("--restarts", cfg.restarts, "optimizer restarts");
    sub->add_option("--jobs", cfg.jobs, "instance-level worker threads");
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--format", cfg.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--dps-level", cfg.dps_level,
                    "symmetric-extension level (0 only)");
    sub->add_option("--tol", cfg.tol, "SDP gap/feasibility tolerance override");
  };

  CLI::App* bounds = app.add_subcommand(
      "bounds", "ergotropy bound table for one or many instances");
  bounds->add_option("--state", cfg.state_spec,
                     "state file or named spec (werner:p[:bell], "
                     "maxmixed:da:db, bell:which, ginibre:da:db)");
  bounds->add_option("--ham", cfg.ham_spec,
                     "hamiltonian file or named spec (antiferromagnet:w[:d], "
                     "flipflop:wa:wb:g, bell-diagonal:e0:e1:e2:e3, "
                     "random:daxdb[:local])");
  bounds->add_option("--sample-dims", cfg.sample_dims,
                     "sample random instances at <d_a>x<d_b>");
  bounds->add_option("--count", cfg.count, "number of sampled instances");
  add_common(bounds);

  CLI::App* sweep =
      app.add_subcommand("werner-sweep", "bound curves over a Werner p-grid");
  sweep->add_option("--ham", cfg.ham_spec, "two-qubit Hamiltonian spec")
      ->required();
  sweep->add_option("--grid", cfg.grid, "p grid <lo>:<hi>:<count> or list");
  sweep->add_option("--bell", cfg.bell, "Bell state of the Werner family");
  add_common(sweep);

  CLI::App* compare = app.add_subcommand(
      "random-compare", "upper/lower bound ratios on random instances");
  compare->add_option("--sample-dims", cfg.sample_dims, "<d_a>x<d_b>");
  compare->add_option("--count", cfg.count, "number of instances");
  add_common(compare);

  CLI::App* witness =
      app.add_subcommand("witness", "entanglement witness report (JSON)");
  witness->add_option("--state", cfg.state_spec, "state spec")->required();
  witness->add_option("--ham", cfg.ham_spec, "hamiltonian spec")->required();
  add_common(witness);

  CLI::App* scan = app.add_subcommand(
      "threshold-scan", "witness detection table over a Werner p-grid");
  scan->add_option("--ham", cfg.ham_spec, "two-qubit Hamiltonian spec")
      ->required();
  scan->add_option("--grid", cfg.grid, "p grid <lo>:<hi>:<count> or list");
  scan->add_option("--bell", cfg.bell, "Bell state of the Werner family");
  add_common(scan);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cfg.dps_level != 0)
      throw InputError("--dps-level: only level 0 is implemented");
    if (bounds->parsed()) {
      cfg.command = "bounds";
      return cmd_bounds(cfg);
    }
    if (sweep->parsed()) {
      cfg.command = "werner-sweep";
      return cmd_werner_sweep(cfg);
    }
    if (compare->parsed()) {
      cfg.command = "random-compare";
      return cmd_random_compare(cfg);
    }
    if (witness->parsed()) {
      cfg.command = "witness";
      return cmd_witness(cfg);
    }
    if (scan->parsed()) {
      cfg.command = "threshold-scan";
      return cmd_threshold_scan(cfg);
    }
    throw InputError("no command");
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return 3;
  } catch (const InvariantError& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 4;
  }
}
