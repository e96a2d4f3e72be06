// frtv: fractional derivatives, TV^r, ROF^r denoising, (alpha, r) training and
// property verification from the command line.
//
// Exit codes: 0 success, 1 invalid input, 2 solver did not converge,
// 3 verification failed.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "frtv/bilevel.hpp"
#include "frtv/frac1d.hpp"
#include "frtv/io.hpp"
#include "frtv/propcheck.hpp"
#include "frtv/rofr.hpp"
#include "frtv/tvr.hpp"

namespace {

using namespace frtv;

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kNotConverged = 2;
constexpr int kVerifyFailed = 3;

bool is_pgm(const std::string& path) {
  std::string ext = std::filesystem::path(path).extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), ::tolower);
  return ext == ".pgm" || ext == ".pnm";
}

// A field read from either a PGM image or a CSV signal, remembering how to
// write it back.
struct Loaded {
  GridField field;
  std::optional<PgmImage> image;
};

Loaded load_field(const std::string& path) {
  if (is_pgm(path)) {
    PgmImage img = read_pgm(path);
    GridField f = img.field;
    return {std::move(f), std::move(img)};
  }
  return {GridField::from_signal(read_signal_csv(path)), std::nullopt};
}

void save_field(const std::string& path, const GridField& f, const std::optional<PgmImage>& like) {
  if (is_pgm(path)) {
    if (f.dims() != 2) throw IoError("cannot write a one-dimensional field as PGM");
    write_pgm(path, f, like ? like->maxval : 255, like ? like->format : PgmFormat::binary);
  } else {
    if (f.dims() != 1) throw IoError("cannot write a two-dimensional field as CSV; use .pgm");
    write_signal_csv(path, f.to_signal());
  }
}

void emit_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
  } else {
    write_text(path, j.dump(2) + "\n");
  }
}

std::string normalize_key(std::string key) {
  std::replace(key.begin(), key.end(), '_', '-');
  return key;
}

// Flat `key = value` file. Blank lines and lines starting with '#' or ';'
// are skipped.
std::vector<std::pair<std::string, std::string>> read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#' || t[0] == ';') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw IoError(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
    }
    std::string key = normalize_key(trim(t.substr(0, eq)));
    std::string value = trim(t.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') {
      value = value.substr(1, value.size() - 2);
    }
    if (key.empty()) throw IoError(path + ":" + std::to_string(lineno) + ": empty key");
    out.emplace_back(std::move(key), std::move(value));
  }
  return out;
}

const std::vector<std::string> kCommands{"deriv", "integral", "tv", "denoise", "train", "verify"};

// Pulls --config out of the arguments and appends the file's entries as
// flags for every key not already given on the command line.
std::vector<std::string> merge_config(std::vector<std::string> args) {
  std::optional<std::string> config;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw IoError("--config requires a path");
      config = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      config = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (!config) return args;
  auto given = [&](const std::string& key) {
    const std::string flag = "--" + key;
    return std::any_of(args.begin(), args.end(), [&](const std::string& a) {
      return a == flag || a.rfind(flag + "=", 0) == 0;
    });
  };
  const bool has_command = std::any_of(args.begin(), args.end(), [](const std::string& a) {
    return std::find(kCommands.begin(), kCommands.end(), a) != kCommands.end();
  });
  for (const auto& [key, value] : read_config(*config)) {
    if (key == "command") {
      if (!has_command) args.insert(args.begin(), value);
      continue;
    }
    if (!given(key)) args.push_back("--" + key + "=" + value);
  }
  return args;
}

std::vector<double> parse_reals(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

SolverKind parse_solver(const std::string& s) {
  if (s == "reference") return SolverKind::reference;
  if (s == "pd" || s == "primal-dual" || s == "primal_dual") return SolverKind::primal_dual;
  throw std::invalid_argument("--solver must be 'reference' or 'pd', got '" + s + "'");
}

struct Options {
  std::string input, output, report, trace, noisy, clean;
  double order = 1.0;
  std::string side = "left";
  std::string p = "2";
  double alpha = 0.0;
  double tol = 1e-8;
  int max_iters = 20000;
  double eps = 1e-4;
  std::string solver = "reference";
  std::string alphas = "0";
  std::string orders = "1";
  std::string suite = "all";
  std::string sizes = "128,256";
  std::uint64_t seed = 7;
};

int run(int argc, char** argv) {
  CLI::App app{"fractional-order total variation toolkit"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--seed", o.seed, "seed for every random choice");

  auto* deriv = app.add_subcommand("deriv", "Riemann-Liouville derivative of a CSV signal");
  deriv->add_option("--order", o.order, "derivative order r > 0")->required();
  deriv->add_option("--side", o.side, "left, right or central");
  deriv->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
  deriv->add_option("--output", o.output)->required();

  auto* integral = app.add_subcommand("integral", "Riemann-Liouville integral of a CSV signal");
  integral->add_option("--order", o.order, "integral order r > 0")->required();
  integral->add_option("--side", o.side, "left or right");
  integral->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
  integral->add_option("--output", o.output)->required();

  auto* tvcmd = app.add_subcommand("tv", "TV^r_lp of a CSV signal or PGM image");
  tvcmd->add_option("--order", o.order)->required();
  tvcmd->add_option("--p", o.p, "1, 2, ... or inf");
  tvcmd->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
  tvcmd->add_option("--report", o.report, "JSON output (stdout if omitted)");

  auto* den = app.add_subcommand("denoise", "ROF^r denoising");
  den->add_option("--alpha", o.alpha)->required();
  den->add_option("--order", o.order);
  den->add_option("--p", o.p, "1, 2 or inf");
  den->add_option("--tol", o.tol);
  den->add_option("--max-iters", o.max_iters);
  den->add_option("--eps", o.eps, "smoothing for the reference solver");
  den->add_option("--solver", o.solver, "reference or pd");
  den->add_option("--input", o.input)->required()->check(CLI::ExistingFile);
  den->add_option("--output", o.output)->required();
  den->add_option("--trace", o.trace, "write the energy trace as CSV");

  auto* tr = app.add_subcommand("train", "grid search over (alpha, r)");
  tr->add_option("--noisy", o.noisy)->required()->check(CLI::ExistingFile);
  tr->add_option("--clean", o.clean)->required()->check(CLI::ExistingFile);
  tr->add_option("--alphas", o.alphas, "comma separated");
  tr->add_option("--orders", o.orders, "comma separated");
  tr->add_option("--p", o.p);
  tr->add_option("--tol", o.tol);
  tr->add_option("--max-iters", o.max_iters);
  tr->add_option("--eps", o.eps);
  tr->add_option("--solver", o.solver);
  tr->add_option("--output", o.output, "CSV table")->required();
  tr->add_option("--report", o.report, "JSON summary");

  auto* ver = app.add_subcommand("verify", "run property suites");
  ver->add_option("--suite", o.suite, "suite name or 'all'");
  ver->add_option("--sizes", o.sizes, "comma separated grid sizes");
  ver->add_option("--report", o.report, "JSON report");
  for (auto* sub : {deriv, integral, tvcmd, den, tr, ver}) {
    sub->add_option("--seed", o.seed, "seed for every random choice");
  }

  std::vector<std::string> args(argv + 1, argv + argc);
  args = merge_config(std::move(args));
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  if (*deriv || *integral) {
    const Signal1D w = read_signal_csv(o.input);
    const Side side = parse_side(o.side);
    Signal1D out = w;
    if (*deriv) {
      out = frac_deriv(w, Order(o.order), side);
    } else if (side == Side::left) {
      out = frac_integral(w, Order(o.order));
    } else if (side == Side::right) {
      out = frac_integral_right(w, Order(o.order));
    } else {
      throw std::invalid_argument("integral: --side must be left or right");
    }
    write_signal_csv(o.output, out);
    if (out.flagged()) std::cerr << "note: endpoint value copied from its neighbour\n";
    return kOk;
  }

  if (*tvcmd) {
    const Loaded in = load_field(o.input);
    emit_json(o.report, to_json(tv_r(in.field, Order(o.order), parse_ellp(o.p))));
    return kOk;
  }

  if (*den) {
    const Loaded in = load_field(o.input);
    DenoiseProblem pb{in.field, o.alpha, Order(o.order), parse_ellp(o.p), o.tol, o.max_iters, o.eps};
    const DenoiseResult res = denoise(pb, parse_solver(o.solver));
    save_field(o.output, res.solution, in.image);
    if (!o.trace.empty()) {
      std::ostringstream os;
      os << "iteration,energy\n" << std::setprecision(17);
      for (std::size_t i = 0; i < res.energy_trace.size(); ++i) {
        os << i << ',' << res.energy_trace[i] << '\n';
      }
      write_text(o.trace, os.str());
    }
    std::cout << "iterations " << res.iterations << ", final energy " << res.final_energy
              << (res.converged ? "" : ", NOT converged") << '\n';
    return res.converged ? kOk : kNotConverged;
  }

  if (*tr) {
    const Loaded noisy = load_field(o.noisy);
    const Loaded clean = load_field(o.clean);
    if (!noisy.field.same_shape(clean.field)) {
      throw std::invalid_argument("train: --noisy and --clean have different shapes");
    }
    std::vector<Order> orders;
    for (double r : parse_reals(o.orders, "--orders")) orders.emplace_back(r);
    DenoiseProblem tmpl{noisy.field, 0.0, orders.front(), parse_ellp(o.p), o.tol, o.max_iters,
                        o.eps};
    const TrainResult res = train({noisy.field, clean.field}, parse_reals(o.alphas, "--alphas"),
                                  orders, tmpl, parse_solver(o.solver));
    std::ostringstream os;
    write_train_csv(os, res);
    write_text(o.output, os.str());
    const bool all_converged = std::all_of(res.table.begin(), res.table.end(),
                                           [](const TrainCell& c) { return c.converged; });
    if (!o.report.empty()) {
      emit_json(o.report, {{"best_alpha", res.best_alpha},
                           {"best_order", res.best_order.value()},
                           {"best_score", res.best_score},
                           {"all_converged", all_converged}});
    }
    std::cout << "best alpha " << res.best_alpha << ", order " << res.best_order.value()
              << ", score " << res.best_score << '\n';
    return all_converged ? kOk : kNotConverged;
  }

  // verify
  std::vector<int> sizes;
  for (double v : parse_reals(o.sizes, "--sizes")) {
    if (v != static_cast<int>(v)) throw std::invalid_argument("--sizes must be integers");
    sizes.push_back(static_cast<int>(v));
  }
  const std::vector<PropertyReport> reports = run_suites(o.suite, sizes, o.seed);
  nlohmann::json j = {{"seed", o.seed}, {"sizes", sizes}, {"suites", nlohmann::json::array()}};
  bool ok = true;
  for (const PropertyReport& r : reports) {
    j["suites"].push_back(to_json(r));
    ok = ok && r.passed();
    std::cout << (r.passed() ? "PASS " : "FAIL ") << r.suite << " (" << r.cases.size() - r.failures()
              << "/" << r.cases.size() << ")\n";
    for (const PropertyCase& c : r.cases) {
      if (!c.pass) std::cout << "  failed: " << c.description << ": " << c.measured << " vs " << c.bound << '\n';
    }
  }
  j["pass"] = ok;
  if (!o.report.empty()) emit_json(o.report, j);
  return ok ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInvalid;
  }
}
