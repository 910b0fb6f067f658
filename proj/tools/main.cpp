// Command-line front end: spectra, singular values, perturbation series,
// Borel-Leroy summation, identity checks and coupling sweeps for the
// PT-symmetric odd anharmonic oscillator family H(g) = -Delta + x^2 + i g W.
#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include "ptosc/borel.hpp"
#include "ptosc/errors.hpp"
#include "ptosc/format.hpp"
#include "ptosc/io.hpp"
#include "ptosc/linalg.hpp"
#include "ptosc/operators.hpp"
#include "ptosc/perturbation.hpp"
#include "ptosc/verify.hpp"

using ordered_json = nlohmann::ordered_json;
using Complex = std::complex<double>;

namespace {

constexpr int kExitChecksFailed = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitSolverError = 3;

struct RunConfig {
  int dim = 1;
  int cutoff = 20;
  bool cutoff_set = false;
  std::string potential = "x1^3";
  double g = 0.0;
  std::string g_grid;  // start:stop:count
  std::string format;  // csv | json; per-subcommand default when empty
  std::string output;
  std::string dump_matrix;

  std::string level = "0";
  int order = 16;
  double order_q = 0.0;
  bool order_q_set = false;
  std::string pade;  // M,Mp
  int nodes = 64;
  bool compare_direct = false;

  int k_max = 10;
  int trials = 20;
  int window = 8;
  std::string convergence_cutoffs;  // comma-separated L values

  std::string config_path;  // handled by the pre-pass; bound so CLI11 accepts it
};

// ---------------------------------------------------------------------------
// config file: flat key=value lines mirroring the long flag names; flags win.

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ptosc::ValidationError("cannot open config file " + path);
  std::map<std::string, std::string> values;
  std::string line;
  const auto trim = [](std::string s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    const auto last = s.find_last_not_of(" \t\r\n");
    return first == std::string::npos ? std::string() : s.substr(first, last - first + 1);
  };
  while (std::getline(in, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ptosc::ValidationError("config line is not key=value: " + stripped);
    values[trim(stripped.substr(0, eq))] = trim(stripped.substr(eq + 1));
  }
  return values;
}

void apply_config_value(RunConfig& cfg, const std::string& key, const std::string& value,
                        std::vector<std::string>& errors) {
  const auto to_int = [&](int& slot) {
    try {
      slot = std::stoi(value);
    } catch (...) {
      errors.push_back("config key '" + key + "': bad integer '" + value + "'");
    }
  };
  const auto to_double = [&](double& slot) {
    try {
      slot = std::stod(value);
    } catch (...) {
      errors.push_back("config key '" + key + "': bad number '" + value + "'");
    }
  };
  if (key == "dim") to_int(cfg.dim);
  else if (key == "cutoff") {
    to_int(cfg.cutoff);
    cfg.cutoff_set = true;
  } else if (key == "potential") cfg.potential = value;
  else if (key == "g") to_double(cfg.g);
  else if (key == "g-grid") cfg.g_grid = value;
  else if (key == "format") cfg.format = value;
  else if (key == "output") cfg.output = value;
  else if (key == "dump-matrix") cfg.dump_matrix = value;
  else if (key == "level") cfg.level = value;
  else if (key == "order") to_int(cfg.order);
  else if (key == "order-q") {
    to_double(cfg.order_q);
    cfg.order_q_set = true;
  } else if (key == "pade") cfg.pade = value;
  else if (key == "nodes") to_int(cfg.nodes);
  else if (key == "compare-direct") cfg.compare_direct = (value == "true" || value == "1");
  else if (key == "k-max") to_int(cfg.k_max);
  else if (key == "trials") to_int(cfg.trials);
  else if (key == "window") to_int(cfg.window);
  else if (key == "convergence-cutoffs") cfg.convergence_cutoffs = value;
  else errors.push_back("config key '" + key + "' is not a known flag");
}

// ---------------------------------------------------------------------------
// validated run parameters

struct Run {
  ptosc::BasisTruncation truncation;
  ptosc::PolynomialPotential potential;
  std::vector<double> grid;  // one or more couplings
  bool has_grid = false;
  ptosc::MultiIndex level;
  std::pair<int, int> pade_degrees{-1, -1};  // -1: library default
  double order_q = 0.0;
  std::string format;
  std::vector<int> convergence_cutoffs;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
  return values;
}

Run validate_config(const RunConfig& cfg, const std::string& subcommand) {
  std::vector<std::string> errors;
  Run run;

  if (cfg.dim < 1) errors.push_back("--dim must be >= 1");
  if (cfg.cutoff < 0) errors.push_back("--cutoff must be >= 0");

  try {
    run.potential = ptosc::parse_potential(cfg.potential, std::max(cfg.dim, 1));
  } catch (const ptosc::Error& e) {
    errors.push_back(std::string("--potential: ") + e.what());
  }

  if (!cfg.g_grid.empty()) {
    run.has_grid = true;
    double start = 0.0, stop = 0.0;
    int count = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(cfg.g_grid);
    if (ss >> start >> c1 >> stop >> c2 >> count && c1 == ':' && c2 == ':' && count >= 1) {
      for (int i = 0; i < count; ++i)
        run.grid.push_back(count == 1 ? start
                                      : start + (stop - start) * i / double(count - 1));
    } else {
      errors.push_back("--g-grid must be start:stop:count");
    }
  } else {
    run.grid.push_back(cfg.g);
  }

  if (cfg.format.empty()) {
    run.format = (subcommand == "borel" || subcommand == "verify") ? "json" : "csv";
  } else if (cfg.format == "csv" || cfg.format == "json") {
    run.format = cfg.format;
  } else {
    errors.push_back("--format must be csv or json");
  }

  if (!cfg.dump_matrix.empty() && run.has_grid)
    errors.push_back("--dump-matrix needs a single --g, not a grid");

  // level: comma-separated quantum numbers, one per dimension; only the
  // series subcommands take one.
  run.level.entries.assign(std::max(cfg.dim, 1), 0);
  if (subcommand == "perturb" || subcommand == "borel") {
    try {
      const auto entries = parse_int_list(cfg.level);
      run.level.entries = entries;
      if (static_cast<int>(entries.size()) != cfg.dim)
        errors.push_back("--level needs exactly " + std::to_string(cfg.dim) + " entries");
      for (int e : entries)
        if (e < 0) errors.push_back("--level entries must be >= 0");
    } catch (...) {
      errors.push_back("--level must be comma-separated integers");
    }
  }

  if (cfg.order < 1) errors.push_back("--order must be >= 1");
  if (cfg.nodes < 1) errors.push_back("--nodes must be >= 1");
  if (cfg.k_max < 1) errors.push_back("--k-max must be >= 1");
  if (cfg.trials < 1) errors.push_back("--trials must be >= 1");
  if (cfg.window < 1) errors.push_back("--window must be >= 1");

  if (!cfg.pade.empty()) {
    bool ok = false;
    const auto comma = cfg.pade.find(',');
    if (comma != std::string::npos) {
      try {
        run.pade_degrees.first = std::stoi(cfg.pade.substr(0, comma));
        run.pade_degrees.second = std::stoi(cfg.pade.substr(comma + 1));
        ok = run.pade_degrees.first >= 0 && run.pade_degrees.second >= 0;
      } catch (...) {
      }
    }
    if (!ok) errors.push_back("--pade must be M,Mp with M,Mp >= 0");
  }

  if (cfg.order_q_set) {
    run.order_q = cfg.order_q;
    if (run.order_q <= 0.0) errors.push_back("--order-q must be positive");
  } else {
    // default order from the potential degree 2K+1
    run.order_q = run.potential.K > 0 ? (2.0 * run.potential.K - 1.0) / 2.0 : 0.5;
  }

  if (!cfg.convergence_cutoffs.empty()) {
    try {
      run.convergence_cutoffs = parse_int_list(cfg.convergence_cutoffs);
      for (std::size_t i = 0; i < run.convergence_cutoffs.size(); ++i)
        if (run.convergence_cutoffs[i] < 0 ||
            (i > 0 && run.convergence_cutoffs[i] <= run.convergence_cutoffs[i - 1]))
          errors.push_back("--convergence-cutoffs must be ascending and >= 0");
    } catch (...) {
      errors.push_back("--convergence-cutoffs must be comma-separated integers");
    }
  }

  // cutoff: explicit value is honored, otherwise perturbative subcommands
  // raise it to the smallest interior truncation.
  int cutoff = cfg.cutoff;
  if ((subcommand == "perturb" || subcommand == "borel") && !cfg.cutoff_set && errors.empty()) {
    cutoff = std::max(
        cutoff, run.level.principal() + cfg.order * run.potential.degree() + 2);
  }
  run.truncation = ptosc::BasisTruncation{cfg.dim, cutoff};

  if (!errors.empty()) {
    std::string message = "configuration errors:";
    for (const auto& e : errors) message += "\n  - " + e;
    throw ptosc::ValidationError(message);
  }
  return run;
}

// ---------------------------------------------------------------------------
// emission

class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ptosc::ValidationError("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string fmt(double v) { return ptosc::format_double(v); }

void write_csv(std::ostream& os, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows,
               const std::vector<std::string>& trailer = {}) {
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
    os << "\n";
  }
  for (const auto& line : trailer) os << line << "\n";
}

void write_json(std::ostream& os, const ordered_json& doc) { os << doc.dump(2) << "\n"; }

void maybe_dump_matrix(const RunConfig& cfg, const Run& run) {
  if (cfg.dump_matrix.empty()) return;
  const auto h = ptosc::assemble_h(run.truncation, run.potential, run.grid.front());
  std::ofstream out(cfg.dump_matrix, std::ios::binary);
  if (!out) throw ptosc::ValidationError("cannot open dump file " + cfg.dump_matrix);
  ptosc::write_matrix_dump(out, h, ptosc::to_string(run.potential), run.grid.front());
}

// ---------------------------------------------------------------------------
// subcommands

int cmd_spectrum(const RunConfig& cfg, const Run& run) {
  std::vector<std::vector<std::string>> rows;
  ordered_json doc = ordered_json::array();
  for (double g : run.grid) {
    const auto h = ptosc::assemble_h(run.truncation, run.potential, g);
    const auto values = ptosc::eig_general(h).values;
    for (std::size_t k = 0; k < values.size(); ++k) {
      rows.push_back({fmt(g), std::to_string(k), fmt(values[k].real()),
                      fmt(values[k].imag())});
      doc.push_back({{"g", g},
                     {"index", k},
                     {"re_lambda", values[k].real()},
                     {"im_lambda", values[k].imag()}});
    }
  }
  Sink sink(cfg.output);
  if (run.format == "csv")
    write_csv(sink.stream(), {"g", "index", "re_lambda", "im_lambda"}, rows);
  else
    write_json(sink.stream(), doc);
  return 0;
}

int cmd_singular(const RunConfig& cfg, const Run& run) {
  std::vector<std::vector<std::string>> rows;
  ordered_json doc = ordered_json::array();
  for (double g : run.grid) {
    const auto q = ptosc::assemble_q(run.truncation, run.potential, g);
    const auto signed_values = ptosc::eig_hermitian(q, false).real_values();
    std::vector<std::size_t> order(signed_values.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::abs(signed_values[a]) < std::abs(signed_values[b]);
    });
    for (std::size_t k = 0; k < order.size(); ++k) {
      const double nu = signed_values[order[k]];
      const int parity = nu >= 0 ? 1 : -1;
      rows.push_back({fmt(g), std::to_string(k), fmt(std::abs(nu)), fmt(nu),
                      std::to_string(parity)});
      doc.push_back({{"g", g},
                     {"index", k},
                     {"mu", std::abs(nu)},
                     {"signed", nu},
                     {"parity", parity}});
    }
  }
  Sink sink(cfg.output);
  if (run.format == "csv")
    write_csv(sink.stream(), {"g", "index", "mu", "signed", "parity"}, rows);
  else
    write_json(sink.stream(), doc);
  return 0;
}

ptosc::PowerSeries build_series(const RunConfig& cfg, const Run& run) {
  return ptosc::rs_coefficients(run.truncation, run.potential, run.level, cfg.order);
}

int cmd_perturb(const RunConfig& cfg, const Run& run) {
  const auto series = build_series(cfg, run);
  std::optional<ptosc::GrowthFit> fit;
  try {
    fit = ptosc::coefficient_growth_fit(series);
  } catch (const ptosc::InsufficientOrders&) {
    // short series: still emit the coefficients
  }

  std::vector<std::vector<std::string>> rows;
  ordered_json coefficients = ordered_json::array();
  for (std::size_t s = 0; s < series.coefficients.size(); ++s) {
    rows.push_back({std::to_string(s), fmt(series.coefficients[s]),
                    fmt(series.stability[s])});
    coefficients.push_back({{"s", s},
                            {"mu_s", series.coefficients[s]},
                            {"stability_estimate", series.stability[s]}});
  }

  Sink sink(cfg.output);
  if (run.format == "csv") {
    std::vector<std::string> trailer;
    if (fit)
      trailer.push_back("# growth_fit A=" + fmt(fit->amplitude) + " C=" +
                        fmt(fit->base) + " q=" + fmt(fit->order));
    write_csv(sink.stream(), {"s", "mu_s", "stability_estimate"}, rows, trailer);
  } else {
    ordered_json doc{{"dim", run.truncation.dim},
                     {"cutoff", run.truncation.cutoff},
                     {"potential", ptosc::to_string(run.potential)},
                     {"level", run.level.entries},
                     {"order", cfg.order},
                     {"coefficients", coefficients}};
    if (fit)
      doc["growth_fit"] = {{"A", fit->amplitude}, {"C", fit->base}, {"q", fit->order}};
    write_json(sink.stream(), doc);
  }
  return 0;
}

double direct_branch_value(const Run& run, double g) {
  const auto basis = ptosc::enumerate_basis(run.truncation);
  Eigen::Index level_index = -1;
  for (Eigen::Index i = 0; i < static_cast<Eigen::Index>(basis.size()); ++i)
    if (basis[i] == run.level) level_index = i;
  const auto q = ptosc::assemble_q(run.truncation, run.potential, g);
  const auto eigs = ptosc::eig_hermitian(q, true);
  Eigen::Index best = 0;
  double best_overlap = -1.0;
  for (Eigen::Index k = 0; k < eigs.vectors->cols(); ++k) {
    const double overlap = std::abs((*eigs.vectors)(level_index, k));
    if (overlap > best_overlap) {
      best_overlap = overlap;
      best = k;
    }
  }
  return eigs.values[best].real();
}

int cmd_borel(const RunConfig& cfg, const Run& run) {
  const auto series = build_series(cfg, run);
  std::optional<std::pair<int, int>> degrees;
  if (run.pade_degrees.first >= 0) degrees = run.pade_degrees;

  ordered_json doc = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  for (double g : run.grid) {
    const auto result = ptosc::borel_sum(series, g, run.order_q, cfg.nodes, degrees);
    ordered_json poles = ordered_json::array();
    std::string poles_csv;
    for (const auto& p : result.continuation_poles) {
      poles.push_back({{"re", p.real()}, {"im", p.imag()}});
      if (!poles_csv.empty()) poles_csv += ";";
      poles_csv += fmt(p.real()) + " " + fmt(p.imag());
    }
    ordered_json entry{{"g", result.g},
                       {"q", result.q},
                       {"value", result.value},
                       {"pade_m", result.pade_m},
                       {"pade_mp", result.pade_mp},
                       {"nodes", result.quadrature_nodes},
                       {"pole_warning", result.pole_warning},
                       {"pade_degraded", result.pade_degraded},
                       {"poles", poles}};
    std::vector<std::string> row{fmt(result.g),
                                 fmt(result.q),
                                 fmt(result.value),
                                 std::to_string(result.pade_m),
                                 std::to_string(result.pade_mp),
                                 std::to_string(result.quadrature_nodes),
                                 result.pole_warning ? "true" : "false",
                                 result.pade_degraded ? "true" : "false",
                                 poles_csv};
    if (cfg.compare_direct) {
      const double direct = direct_branch_value(run, g);
      const double deviation = std::abs(result.value - direct) / std::abs(direct);
      entry["direct"] = direct;
      entry["relative_deviation"] = deviation;
      row.push_back(fmt(direct));
      row.push_back(fmt(deviation));
    }
    doc.push_back(std::move(entry));
    rows.push_back(std::move(row));
  }

  Sink sink(cfg.output);
  if (run.format == "csv") {
    std::vector<std::string> header{"g",     "q",           "value",
                                    "pade_m", "pade_mp",     "nodes",
                                    "pole_warning", "pade_degraded", "poles"};
    if (cfg.compare_direct) {
      header.push_back("direct");
      header.push_back("relative_deviation");
    }
    write_csv(sink.stream(), header, rows);
  } else {
    write_json(sink.stream(), doc.size() == 1 ? doc[0] : doc);
  }
  return 0;
}

ordered_json report_to_json(const ptosc::VerificationReport& report) {
  return {{"check", report.check_name},
          {"dim", report.dim},
          {"cutoff", report.cutoff},
          {"potential", report.potential},
          {"g", report.g},
          {"measured_discrepancy", report.measured_discrepancy},
          {"tolerance", report.tolerance},
          {"passed", report.passed},
          {"details", report.details}};
}

int cmd_verify(const RunConfig& cfg, const Run& run) {
  std::vector<ptosc::VerificationReport> reports;
  for (double g : run.grid) {
    reports.push_back(ptosc::check_pseudohermiticity(run.truncation, run.potential, g));
    reports.push_back(ptosc::check_singular_values(run.truncation, run.potential, g));
    reports.push_back(
        ptosc::check_canonical_expansion(run.truncation, run.potential, g, cfg.trials));
    reports.push_back(
        ptosc::check_eigen_relation(run.truncation, run.potential, g, cfg.window));
    reports.push_back(ptosc::check_weyl(run.truncation, run.potential, g, cfg.k_max));
  }

  ordered_json doc = ordered_json::array();
  std::vector<std::vector<std::string>> rows;
  bool all_passed = true;
  for (const auto& report : reports) {
    all_passed = all_passed && report.passed;
    doc.push_back(report_to_json(report));
    rows.push_back({report.check_name, std::to_string(report.dim),
                    std::to_string(report.cutoff), report.potential, fmt(report.g),
                    fmt(report.measured_discrepancy), fmt(report.tolerance),
                    report.passed ? "true" : "false"});
  }

  if (!run.convergence_cutoffs.empty()) {
    std::vector<ptosc::BasisTruncation> cutoffs;
    for (int L : run.convergence_cutoffs)
      cutoffs.push_back(ptosc::BasisTruncation{run.truncation.dim, L});
    const auto study =
        ptosc::convergence_study(cutoffs, run.potential, run.grid.front(),
                                 ptosc::ConvergenceQuantity::SingularValues, 4);
    ordered_json study_json{{"check", "convergence_study"},
                            {"quantity", study.quantity},
                            {"cutoffs", study.cutoffs},
                            {"values", study.values},
                            {"diffs", study.diffs},
                            {"stagnation", study.stagnation}};
    doc.push_back(std::move(study_json));
  }

  Sink sink(cfg.output);
  if (run.format == "csv")
    write_csv(sink.stream(),
              {"check", "dim", "cutoff", "potential", "g", "measured_discrepancy",
               "tolerance", "passed"},
              rows);
  else
    write_json(sink.stream(), doc);
  return all_passed ? 0 : kExitChecksFailed;
}

int cmd_sweep(const RunConfig& cfg, const Run& run) {
  if (!run.has_grid)
    throw ptosc::ValidationError("configuration errors:\n  - sweep needs --g-grid");

  // Diagonalize every grid point on a bounded pool; emission stays in grid order.
  const auto w_matrix = ptosc::assemble_w(run.truncation, run.potential);
  std::vector<ptosc::SpectralDecomposition> decompositions(run.grid.size());
  {
    const unsigned workers = std::max(1u, std::min(std::thread::hardware_concurrency(),
                                                   8u));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        while (true) {
          const std::size_t i = next.fetch_add(1);
          if (i >= run.grid.size()) return;
          decompositions[i] =
              ptosc::eig_hermitian(ptosc::assemble_q(w_matrix, run.grid[i]), true);
        }
      });
    for (auto& t : pool) t.join();
  }

  const Eigen::Index n = decompositions.front().vectors->rows();
  const int branches = std::min<int>(cfg.k_max, static_cast<int>(n));

  // Branch labels from the first grid point, lowest |value| first; follow
  // each branch by greedy maximal eigenvector overlap between neighbours.
  std::vector<int> branch_column(branches);
  {
    std::vector<int> order(n);
    for (Eigen::Index i = 0; i < n; ++i) order[i] = int(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      return std::abs(decompositions.front().values[a].real()) <
             std::abs(decompositions.front().values[b].real());
    });
    for (int b = 0; b < branches; ++b) branch_column[b] = order[b];
  }

  std::vector<std::vector<std::string>> rows;
  ordered_json doc = ordered_json::array();
  const auto emit = [&](double g, const ptosc::SpectralDecomposition& dec) {
    for (int b = 0; b < branches; ++b) {
      const double nu = dec.values[branch_column[b]].real();
      rows.push_back({fmt(g), std::to_string(b), fmt(std::abs(nu)), fmt(nu)});
      doc.push_back({{"g", g}, {"branch", b}, {"mu", std::abs(nu)}, {"signed", nu}});
    }
  };

  emit(run.grid.front(), decompositions.front());
  for (std::size_t i = 1; i < run.grid.size(); ++i) {
    const auto& previous = *decompositions[i - 1].vectors;
    const auto& current = *decompositions[i].vectors;
    std::vector<std::tuple<double, int, int>> candidates;  // overlap, branch, column
    for (int b = 0; b < branches; ++b) {
      const Eigen::VectorXcd overlaps = current.adjoint() * previous.col(branch_column[b]);
      for (Eigen::Index j = 0; j < n; ++j)
        candidates.emplace_back(std::abs(overlaps(j)), b, int(j));
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
    std::vector<bool> branch_done(branches, false), column_used(n, false);
    int assigned = 0;
    for (const auto& [overlap, b, j] : candidates) {
      if (branch_done[b] || column_used[j]) continue;
      branch_column[b] = j;
      branch_done[b] = true;
      column_used[j] = true;
      if (++assigned == branches) break;
    }
    emit(run.grid[i], decompositions[i]);
  }

  Sink sink(cfg.output);
  if (run.format == "csv")
    write_csv(sink.stream(), {"g", "branch", "mu", "signed"}, rows);
  else
    write_json(sink.stream(), doc);
  return 0;
}

void add_shared_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dim", cfg.dim, "Spatial dimension d");
  sub->add_option("--cutoff", cfg.cutoff, "Principal quantum number cutoff L");
  sub->add_option("--potential", cfg.potential, "Odd homogeneous polynomial, e.g. x1^2*x2");
  sub->add_option("--g", cfg.g, "Coupling constant");
  sub->add_option("--g-grid", cfg.g_grid, "Coupling grid start:stop:count");
  sub->add_option("--format", cfg.format, "Output format: csv or json");
  sub->add_option("--output", cfg.output, "Output path (default: stdout)");
  sub->add_option("--dump-matrix", cfg.dump_matrix, "Dump H(g) to this path");
  sub->add_option("--config", cfg.config_path,
                  "Config file with key=value lines (flags win)");
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // Pre-pass: apply config-file values as defaults so explicit flags override.
  std::vector<std::string> config_errors;
  try {
    for (int i = 1; i < argc; ++i) {
      std::string arg = argv[i];
      std::string path;
      if (arg == "--config" && i + 1 < argc) path = argv[i + 1];
      else if (arg.rfind("--config=", 0) == 0) path = arg.substr(9);
      if (!path.empty())
        for (const auto& [key, value] : read_config_file(path))
          apply_config_value(cfg, key, value, config_errors);
    }
  } catch (const ptosc::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  CLI::App app{"Spectral toolkit for PT-symmetric odd anharmonic oscillators"};
  app.require_subcommand(1);

  auto* spectrum = app.add_subcommand("spectrum", "Eigenvalues of H(g)");
  auto* singular = app.add_subcommand("singular", "Singular values via Q(g) = P H(g)");
  auto* perturb = app.add_subcommand("perturb", "Rayleigh-Schrodinger series of a Q branch");
  auto* borel = app.add_subcommand("borel", "Borel-Leroy summation of the series");
  auto* verify = app.add_subcommand("verify", "Structural and spectral identity checks");
  auto* sweep = app.add_subcommand("sweep", "Branch-tracked singular values over a grid");

  for (auto* sub : {spectrum, singular, perturb, borel, verify, sweep})
    add_shared_options(sub, cfg);
  for (auto* sub : {perturb, borel}) {
    sub->add_option("--level", cfg.level, "Unperturbed level, comma-separated");
    sub->add_option("--order", cfg.order, "Series order N");
  }
  borel->add_option("--order-q", cfg.order_q, "Borel-Leroy order q");
  borel->add_option("--pade", cfg.pade, "Pade degrees M,Mp");
  borel->add_option("--nodes", cfg.nodes, "Gauss-Laguerre node count");
  borel->add_flag("--compare-direct", cfg.compare_direct,
                  "Also report the diagonalized branch value");
  verify->add_option("--k-max", cfg.k_max, "Weyl partial sums up to k");
  verify->add_option("--trials", cfg.trials, "Random trial vectors");
  verify->add_option("--window", cfg.window, "Eigen-relation index window");
  verify->add_option("--convergence-cutoffs", cfg.convergence_cutoffs,
                     "Comma-separated cutoffs for a convergence table");
  sweep->add_option("--k-max", cfg.k_max, "Number of tracked branches");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) ? kExitConfigError : 0;
  }

  cfg.cutoff_set = cfg.cutoff_set || app.get_subcommands().front()->count("--cutoff") > 0;
  cfg.order_q_set = cfg.order_q_set || borel->count("--order-q") > 0;

  const std::string subcommand = app.get_subcommands().front()->get_name();
  try {
    if (!config_errors.empty()) {
      std::string message = "configuration errors:";
      for (const auto& e : config_errors) message += "\n  - " + e;
      throw ptosc::ValidationError(message);
    }
    const Run run = validate_config(cfg, subcommand);
    maybe_dump_matrix(cfg, run);
    if (subcommand == "spectrum") return cmd_spectrum(cfg, run);
    if (subcommand == "singular") return cmd_singular(cfg, run);
    if (subcommand == "perturb") return cmd_perturb(cfg, run);
    if (subcommand == "borel") return cmd_borel(cfg, run);
    if (subcommand == "verify") return cmd_verify(cfg, run);
    if (subcommand == "sweep") return cmd_sweep(cfg, run);
    return kExitConfigError;
  } catch (const ptosc::ConvergenceFailure& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const ptosc::NoConvergence& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const ptosc::SingularShift& e) {
    std::cerr << "solver failure: " << e.what() << "\n";
    return kExitSolverError;
  } catch (const ptosc::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }
}
