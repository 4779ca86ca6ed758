#include "canoma/cli/commands.hpp"

#include "canoma/errors.hpp"
#include "canoma/optimizer.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <thread>

namespace canoma::cli {

using caching::CacheCase;

namespace {

constexpr std::array<CacheCase, 4> kNomaCases{CacheCase::A, CacheCase::B, CacheCase::C,
                                              CacheCase::D};

CacheCase parse_case(const std::string& s) {
  if (s == "A") return CacheCase::A;
  if (s == "B") return CacheCase::B;
  if (s == "C") return CacheCase::C;
  if (s == "D") return CacheCase::D;
  throw ConfigError("case: expected A, B, C, D or all, got '" + s + "'");
}

std::vector<CacheCase> select_cases(const std::string& selector) {
  if (selector == "all") {
    return {kNomaCases.begin(), kNomaCases.end()};
  }
  return {parse_case(selector)};
}

std::vector<noma::Branch> branches_of(CacheCase c) {
  if (c == CacheCase::A) {
    return {noma::Branch::Full};
  }
  return {noma::Branch::Low, noma::Branch::High};
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. The first exception
// thrown by any task is rethrown on the caller's thread.
template <typename Fn>
void parallel_for(std::size_t n, int workers, Fn fn) {
  const std::size_t threads = std::min<std::size_t>(static_cast<std::size_t>(std::max(workers, 1)), n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += threads) {
          fn(i);
        }
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) {
    t.join();
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, result.ptr);
}

// optimize ---------------------------------------------------------------

void cmd_optimize(const Config& cfg, const std::string& selector, bool json, std::ostream& out) {
  const noma::FullScenario& sc = cfg.full();
  nlohmann::json doc = nlohmann::json::array();
  if (!json) {
    out << "case,branch,alpha,beta,value,evaluations\n";
  }
  auto emit = [&](const std::string& label, const opt::OptResult& r) {
    if (json) {
      nlohmann::json row{{"case", label},
                         {"branch", std::string(noma::to_string(r.branch))},
                         {"alpha", r.alpha},
                         {"value", r.value},
                         {"evaluations", r.evaluations}};
      row["beta"] = r.beta ? nlohmann::json(*r.beta) : nlohmann::json(nullptr);
      doc.push_back(row);
      return;
    }
    out << label << ',' << noma::to_string(r.branch) << ',' << format_number(r.alpha) << ','
        << (r.beta ? format_number(*r.beta) : std::string()) << ',' << format_number(r.value)
        << ',' << r.evaluations << '\n';
  };

  if (selector == "split") {
    emit("split", opt::optimize_split(cfg.scenario));
  } else {
    for (CacheCase c : select_cases(selector)) {
      emit(std::string(caching::to_string(c)), opt::optimize_case(c, sc));
    }
  }
  if (json) {
    out << doc.dump(2) << '\n';
  }
}

// sweep ------------------------------------------------------------------

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "zeta") return SweepVariable::Zeta;
  if (name == "snr_db") return SweepVariable::SnrDb;
  if (name == "cache_size") return SweepVariable::CacheSize;
  if (name == "omega") return SweepVariable::Omega;
  if (name == "m") return SweepVariable::M;
  if (name == "num_files") return SweepVariable::NumFiles;
  throw ConfigError("variable: unknown sweep variable '" + name + "'");
}

std::string to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::Zeta: return "zeta";
    case SweepVariable::SnrDb: return "snr_db";
    case SweepVariable::CacheSize: return "cache_size";
    case SweepVariable::Omega: return "omega";
    case SweepVariable::M: return "m";
    case SweepVariable::NumFiles: return "num_files";
  }
  return "?";
}

std::vector<double> linspace(double from, double to, int steps) {
  if (steps < 1) {
    throw ConfigError("steps: must be at least 1");
  }
  std::vector<double> values(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    values[static_cast<std::size_t>(i)] =
        steps == 1 ? from : (i == steps - 1 ? to : from + (to - from) * i / (steps - 1));
  }
  return values;
}

Config apply_sweep_value(const Config& cfg, SweepVariable variable, double value) {
  Config out = cfg;
  noma::FullScenario& sc = out.full();
  switch (variable) {
    case SweepVariable::Zeta:
      out.catalog.zeta = value;
      break;
    case SweepVariable::SnrDb:
      sc.power = power_from_snr_db(value, sc.sigma1_sq);
      break;
    case SweepVariable::CacheSize:
      out.catalog.cache_size = static_cast<int>(std::lround(value));
      break;
    case SweepVariable::Omega:
      for (auto* ch : {&sc.chan1, &sc.chan2}) {
        ch->omega1 = ch->omega2 = value;
      }
      break;
    case SweepVariable::M:
      for (auto* ch : {&sc.chan1, &sc.chan2}) {
        ch->m1 = ch->m2 = value;
      }
      break;
    case SweepVariable::NumFiles:
      out.catalog.num_files = static_cast<int>(std::lround(value));
      break;
  }
  try {
    out.catalog.validate();
    out.scenario.validate();
  } catch (const DomainError& e) {
    throw ConfigError(to_string(variable) + "=" + format_number(value) + ": " + e.what());
  }
  return out;
}

SweepRow sweep_point(const Config& cfg, SweepVariable variable, double value, bool with_split) {
  const Config point = apply_sweep_value(cfg, variable, value);
  const auto optimizer = opt::case_optimizer();
  SweepRow row;
  row.value = value;
  row.noma = noma::average_success(point.full(), point.catalog, optimizer, point.averaging);
  row.oma = noma::average_oma_success(point.full(), point.catalog, point.averaging);
  row.conventional =
      noma::average_conventional_success(point.full(), point.catalog, optimizer, point.averaging);
  if (with_split) {
    row.split = opt::optimize_split(point.scenario).value;
  }
  return row;
}

void cmd_sweep(const Config& cfg, SweepVariable variable, const std::vector<double>& values,
               int workers, bool with_split, std::ostream& out) {
  std::vector<SweepRow> rows(values.size());
  parallel_for(values.size(), workers,
               [&](std::size_t i) { rows[i] = sweep_point(cfg, variable, values[i], with_split); });

  out << to_string(variable) << ",avg_success_noma,avg_success_oma,avg_success_conventional"
      << (with_split ? ",split_success" : "") << '\n';
  for (const SweepRow& r : rows) {
    out << format_number(r.value) << ',' << format_number(r.noma) << ',' << format_number(r.oma)
        << ',' << format_number(r.conventional);
    if (with_split) {
      out << ',' << format_number(*r.split);
    }
    out << '\n';
  }
}

// surface ----------------------------------------------------------------

void cmd_surface(const Config& cfg, int grid, std::ostream& out) {
  if (grid < 2) {
    throw ConfigError("grid: must be at least 2");
  }
  out << "branch,alpha,beta,objective\n";
  for (noma::Branch branch : {noma::Branch::Low, noma::Branch::High}) {
    const double lo = branch == noma::Branch::Low ? 0.0 : 0.5;
    const auto alphas = linspace(lo, lo + 0.5, grid);
    const auto betas = linspace(0.0, 1.0, grid);
    for (double a : alphas) {
      for (double b : betas) {
        const double v = noma::split_on_branch(branch, {a, b}, cfg.scenario).objective();
        out << noma::to_string(branch) << ',' << format_number(a) << ',' << format_number(b) << ','
            << format_number(v) << '\n';
      }
    }
  }
}

// validate ---------------------------------------------------------------

std::vector<ValidationCell> run_validation(const Config& cfg, const mc::McConfig& mc_cfg,
                                           const std::vector<noma::Semantics>& semantics) {
  std::vector<ValidationCell> cells;
  auto add = [&](const std::string& kind, const std::string& label, noma::Semantics s,
                 double alpha, std::optional<double> beta, const std::string& quantity,
                 double analytic, const mc::McEstimate& est) {
    const double tol = std::max(0.005, 3.0 * est.half_width_99);
    cells.push_back({kind, label, s, alpha, beta, quantity, analytic, est.estimate,
                     est.half_width_99, tol, std::fabs(analytic - est.estimate) <= tol});
  };

  for (noma::Semantics s : semantics) {
    noma::FullScenario sc = cfg.full();
    sc.semantics = s;
    for (CacheCase c : kNomaCases) {
      for (int k = 0; k < 10; ++k) {
        const double alpha = 0.05 + 0.1 * k;
        const auto analytic = noma::success_case(c, alpha, sc);
        const auto est = mc::mc_case(c, alpha, sc, mc_cfg);
        const std::string label(caching::to_string(c));
        add("full", label, s, alpha, std::nullopt, "p1", analytic.p1, est.p1);
        add("full", label, s, alpha, std::nullopt, "p2", analytic.p2, est.p2);
        add("full", label, s, alpha, std::nullopt, "joint", analytic.joint(), est.joint);
      }
    }

    noma::SplitScenario split = cfg.scenario;
    split.base.semantics = s;
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const noma::SplitAllocation alloc{0.1 + 0.2 * i, 0.1 + 0.2 * j};
        const auto branch = alloc.alpha <= 0.5 ? noma::Branch::Low : noma::Branch::High;
        const auto analytic = noma::split_on_branch(branch, alloc, split);
        const auto est = mc::mc_split(alloc, split, mc_cfg);
        add("split", "a", s, alloc.alpha, alloc.beta, "p1", analytic.v1, est.p1);
        add("split", "a", s, alloc.alpha, alloc.beta, "p2", analytic.v2, est.p2);
        add("split", "a", s, alloc.alpha, alloc.beta, "joint", analytic.objective(), est.joint);
      }
    }
  }
  return cells;
}

bool cmd_validate(const Config& cfg, const mc::McConfig& mc_cfg, bool all_semantics,
                  std::ostream& out) {
  if (mc_cfg.samples < 10'000) {
    throw ConfigError("samples: validation needs at least 10000 samples");
  }
  std::vector<noma::Semantics> semantics{cfg.full().semantics};
  if (all_semantics) {
    semantics = {noma::Semantics::PaperProduct, noma::Semantics::JointEvent};
  }
  const auto cells = run_validation(cfg, mc_cfg, semantics);
  out << "kind,case,semantics,alpha,beta,quantity,analytic,mc,half_width_99,tolerance,pass\n";
  bool all_pass = true;
  for (const auto& c : cells) {
    all_pass = all_pass && c.pass;
    out << c.kind << ',' << c.label << ',' << noma::to_string(c.semantics) << ','
        << format_number(c.alpha) << ',' << (c.beta ? format_number(*c.beta) : std::string())
        << ',' << c.quantity << ',' << format_number(c.analytic) << ',' << format_number(c.mc)
        << ',' << format_number(c.half_width_99) << ',' << format_number(c.tolerance) << ','
        << (c.pass ? "pass" : "FAIL") << '\n';
  }
  return all_pass;
}

// concavity --------------------------------------------------------------

bool cmd_concavity(const Config& cfg, const std::string& selector, int grid, std::ostream& out,
                   std::ostream& verdicts) {
  if (grid < 11) {
    throw ConfigError("grid: must be at least 11");
  }
  const noma::FullScenario& sc = cfg.full();
  out << "case,branch,alpha,objective\n";
  bool all_concave = true;
  for (CacheCase c : select_cases(selector)) {
    for (noma::Branch branch : branches_of(c)) {
      const opt::Interval range = opt::branch_interval(c, branch, sc);
      const auto f = [&](double alpha) {
        return noma::success_on_branch(c, branch, alpha, sc).joint();
      };
      for (double alpha : linspace(range.lo, range.hi, grid)) {
        out << caching::to_string(c) << ',' << noma::to_string(branch) << ','
            << format_number(alpha) << ',' << format_number(f(alpha)) << '\n';
      }
      const auto report = opt::check_concavity(f, range.lo, range.hi, grid);
      all_concave = all_concave && report.concave;
      verdicts << "case=" << caching::to_string(c) << " branch=" << noma::to_string(branch)
               << " interval=[" << format_number(range.lo) << ',' << format_number(range.hi)
               << "] concave=" << (report.concave ? "true" : "false")
               << " worst_second_difference=" << format_number(report.worst_second_difference)
               << " at_alpha=" << format_number(report.worst_at) << '\n';
    }
  }
  return all_concave;
}

}  // namespace canoma::cli
