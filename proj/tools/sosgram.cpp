// Command-line front end.
// Exit codes: 0 success or match, 1 expectation mismatch, 2 usage or parse
// error, 3 solver or certificate failure.
#include "CLI11.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "sosgram/dual.hpp"
#include "sosgram/io.hpp"
#include "sosgram/registry.hpp"

using namespace sosgram;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kUsage = 2, kSolver = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Global {
  double tol_eig = 1e-6;
  double tol_feas = 1e-8;
  int restarts = 8;
  std::uint64_t seed = 42;
  std::string format = "text";

  bool json() const { return format == "json"; }
  SdpOptions sdp() const {
    SdpOptions o;
    o.tol_rank = tol_eig;
    o.eps_feas = tol_feas;
    o.seed = seed;
    return o;
  }
};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ','))
    if (!trim(item).empty()) out.push_back(trim(item));
  return out;
}

std::string fmt(double x) {
  std::ostringstream o;
  o << std::setprecision(3) << std::scientific << x;
  return o.str();
}

// --- bounds ---------------------------------------------------------------

int cmd_bounds(const Global& g, bool table, int n, int deg) {
  std::vector<std::pair<int, int>> cases;
  if (table) {
    cases = default_table_cases();
  } else {
    if (n <= 0 || deg <= 0) throw UsageError("bounds needs --table or both -n and --deg");
    if (deg % 2 != 0) throw UsageError("--deg must be even, got " + std::to_string(deg));
    cases = {{n, deg}};
  }
  const auto rows = table_N(cases);
  if (g.json())
    std::cout << json(rows).dump(2) << '\n';
  else
    std::cout << table_N_text(rows);
  return kOk;
}

// --- hilbert --------------------------------------------------------------

int cmd_hilbert(const Global& g, int n, const std::string& gens_text, int kmax) {
  if (n < 1) throw UsageError("-n must be >= 1");
  if (kmax < 0) throw UsageError("--kmax must be >= 0");
  std::vector<Polynomial> gens;
  for (auto& s : split_commas(gens_text)) gens.push_back(parse_poly(s, n));
  if (gens.empty()) throw UsageError("no generators given");
  const bool monomial = std::all_of(gens.begin(), gens.end(), [](const Polynomial& p) { return p.size() == 1; });
  HilbertTable t;
  if (monomial) {
    std::vector<Monomial> ms;
    for (auto& p : gens) ms.push_back(p.leading_monomial());
    t = hilbert_table(MonomialIdeal(n, ms), kmax);
  } else {
    t = hilbert_table(IdealGens(gens), kmax);
  }
  if (g.json())
    std::cout << json(t).dump(2) << '\n';
  else
    std::cout << t.to_text();
  return kOk;
}

// --- analyze --------------------------------------------------------------

/// First non-comment line is n=<int>; every later line is one square p_i.
SosDecomposition read_polys_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  std::string line;
  int n = 0;
  std::vector<Polynomial> polys;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (n == 0) {
      if (line.rfind("n=", 0) != 0) throw UsageError(path + ": first line must be n=<int>");
      try {
        n = std::stoi(line.substr(2));
      } catch (const std::exception&) {
        throw UsageError(path + ": bad variable count '" + line + "'");
      }
      if (n < 1) throw UsageError(path + ": n must be >= 1");
      continue;
    }
    polys.push_back(parse_poly(line, n));
  }
  if (n == 0) throw UsageError(path + ": missing n=<int> line");
  if (polys.empty()) throw UsageError(path + ": no polynomials");
  return SosDecomposition(std::move(polys));
}

struct RunResult {
  SpectraReport report;
  std::vector<std::string> mismatches;
  double seconds = 0.0;
};

RunResult run_analysis(const Global& g, const SosDecomposition& s, const ExpectedVerdict* expected) {
  const auto start = std::chrono::steady_clock::now();
  RunResult r;
  r.report = analyze(s, g.sdp(), g.restarts);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!std::isfinite(r.report.t_star)) throw std::runtime_error("dual bound solve failed");
  if (expected) r.mismatches = expectation_mismatches(*expected, r.report);
  return r;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

void print_report_text(const SpectraReport& r, bool dump_f) {
  if (dump_f) std::cout << "f            " << format_poly(r.f) << '\n';
  std::cout << "seed         " << r.seed << '\n'
            << "boundary     " << to_string(r.boundary) << "  (t_star " << fmt(r.t_star) << ", t_lower "
            << fmt(r.t_lower) << ")\n"
            << "positive     " << yes_no(r.strictly_positive) << "  (sphere min " << fmt(r.sphere_min) << ")\n"
            << "max rank     " << r.max_rank << "  (observed";
  for (int k : r.observed_ranks) std::cout << ' ' << k;
  std::cout << ")\n"
            << "unique point " << yes_no(r.unique_point) << "  (face dim " << r.face_dim << ", "
            << r.face_rounds << " reduction rounds)\n";
}

int cmd_analyze(const Global& g, const std::string& key, const std::string& file, bool certify, bool dump_f) {
  if (key.empty() == file.empty()) throw UsageError("analyze needs exactly one of --example KEY or a polynomial file");
  const ExampleEntry* entry = nullptr;
  SosDecomposition s;
  if (!key.empty()) {
    try {
      entry = &find_example(key);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    s = entry->decomposition;
  } else {
    s = read_polys_file(file);
  }

  const RunResult r = run_analysis(g, s, entry ? &entry->expected : nullptr);
  json out = r.report;
  if (entry) {
    out["example"] = entry->key;
    out["expected"] = describe(entry->expected);
    out["mismatches"] = r.mismatches;
  }
  out["seconds"] = r.seconds;

  std::string transcript;
  int code = r.mismatches.empty() ? kOk : kMismatch;
  if (certify) {
    try {
      const auto cert = certificate_search(s.polys, default_probes(s.n, s.d));
      out["certificate"] = cert;
      transcript = proof_transcript(cert, s.polys);
    } catch (const SearchFailedError& e) {
      out["certificate_error"] = e.what();
      code = kSolver;
    } catch (const CertificateInvalidError& e) {
      out["certificate_error"] = e.what();
      code = kSolver;
    }
  }

  if (g.json()) {
    std::cout << out.dump(2) << '\n';
    return code;
  }
  if (entry) std::cout << "example      " << entry->key << "  " << entry->title << '\n';
  print_report_text(r.report, dump_f);
  if (entry) {
    std::cout << "expected     " << describe(entry->expected) << '\n';
    std::cout << "result       " << (r.mismatches.empty() ? "match" : "MISMATCH");
    for (auto& m : r.mismatches) std::cout << ' ' << m;
    std::cout << '\n';
  }
  if (certify) {
    if (transcript.empty())
      std::cout << "certificate  failed: " << out["certificate_error"].get<std::string>() << '\n';
    else
      std::cout << "certificate\n" << transcript;
  }
  return code;
}

// --- examples -------------------------------------------------------------

std::string computed_summary(const SpectraReport& r) {
  std::string s = r.on_boundary ? "boundary" : to_string(r.boundary);
  s += r.strictly_positive ? ", positive" : ", has real zero";
  s += ", rank " + std::to_string(r.max_rank);
  s += r.unique_point ? ", unique" : ", not unique";
  return s;
}

int cmd_examples_list(const Global& g) {
  const auto& reg = example_registry();
  if (g.json()) {
    json out = json::array();
    for (auto& e : reg) out.push_back({{"key", e.key}, {"title", e.title}, {"expected", describe(e.expected)}});
    std::cout << out.dump(2) << '\n';
    return kOk;
  }
  for (auto& e : reg) std::cout << std::left << std::setw(10) << e.key << ' ' << e.title << '\n';
  return kOk;
}

int cmd_examples_run(const Global& g, const std::vector<std::string>& keys) {
  std::vector<const ExampleEntry*> entries;
  for (auto& k : keys) {
    try {
      entries.push_back(&find_example(k));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  std::sort(entries.begin(), entries.end(), [](auto* a, auto* b) { return a->key < b->key; });

  json rows = json::array();
  int mismatched = 0;
  if (!g.json()) {
    std::cout << "seed " << g.seed << '\n'
              << std::left << std::setw(10) << "key" << std::setw(42) << "expected" << std::setw(44) << "computed"
              << std::setw(9) << "result" << "time\n";
  }
  for (auto* e : entries) {
    const RunResult r = run_analysis(g, e->decomposition, &e->expected);
    const bool ok = r.mismatches.empty();
    mismatched += ok ? 0 : 1;
    if (g.json()) {
      json row = r.report;
      row["example"] = e->key;
      row["expected"] = describe(e->expected);
      row["mismatches"] = r.mismatches;
      row["seconds"] = r.seconds;
      rows.push_back(row);
    } else {
      std::ostringstream t;
      t << std::fixed << std::setprecision(1) << r.seconds << "s";
      std::cout << std::left << std::setw(10) << e->key << std::setw(42) << describe(e->expected) << std::setw(44)
                << computed_summary(r.report) << std::setw(9) << (ok ? "match" : "MISMATCH") << t.str() << '\n';
    }
  }
  if (g.json()) {
    std::cout << json{{"seed", g.seed}, {"examples", rows}, {"mismatched", mismatched}}.dump(2) << '\n';
  } else {
    std::cout << (mismatched ? std::to_string(mismatched) + " of " + std::to_string(entries.size()) + " mismatched"
                             : "all " + std::to_string(entries.size()) + " examples match")
              << '\n';
  }
  return mismatched ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sum-of-squares Gram spectrahedra: bounds, Hilbert functions, rank analyses, certificates"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--tol-eig", g.tol_eig, "relative eigenvalue threshold for numeric rank")->capture_default_str();
  app.add_option("--tol-feas", g.tol_feas, "PSD feasibility tolerance of the SDP solver")->capture_default_str();
  app.add_option("--restarts", g.restarts, "random linear objectives per rank estimate")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "seed for every stochastic component")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

  bool table = false;
  int n = 0, deg = 0, kmax = 0;
  auto* bounds = app.add_subcommand("bounds", "N(n,d,2d)-1 against dim H_{n,d} and Pythagoras bounds");
  bounds->add_flag("--table", table, "all rows of the standard table");
  bounds->add_option("-n", n, "number of variables");
  bounds->add_option("--deg", deg, "even degree 2d");

  std::string gens_text;
  auto* hilbert = app.add_subcommand("hilbert", "Hilbert function HF_0..HF_kmax of an ideal");
  hilbert->add_option("-n", n, "number of variables")->required();
  hilbert->add_option("gens", gens_text, "comma-separated generators, e.g. \"x1^3,x2^3\"")->required();
  hilbert->add_option("--kmax", kmax, "largest degree")->required();

  std::string key, file;
  bool certify = false, dump_f = false;
  auto* an = app.add_subcommand("analyze", "Gram spectrahedron analysis of a sum of squares");
  an->add_option("--example", key, "registry key");
  an->add_option("file", file, "file with n=<int> then one square per line");
  an->add_flag("--certify", certify, "search for an exact dual certificate of uniqueness");
  an->add_flag("--dump-f", dump_f, "print the expanded form f");

  std::vector<std::string> run_keys;
  auto* ex = app.add_subcommand("examples", "registered examples");
  ex->require_subcommand(1);
  auto* ex_list = ex->add_subcommand("list", "list registry keys");
  auto* ex_run = ex->add_subcommand("run", "analyze the given examples");
  ex_run->add_option("keys", run_keys, "registry keys")->required();
  auto* ex_all = ex->add_subcommand("run-all", "analyze every example and compare with its expectation");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*bounds) return cmd_bounds(g, table, n, deg);
    if (*hilbert) return cmd_hilbert(g, n, gens_text, kmax);
    if (*an) return cmd_analyze(g, key, file, certify, dump_f);
    if (*ex_list) return cmd_examples_list(g);
    if (*ex_run) return cmd_examples_run(g, run_keys);
    if (*ex_all) {
      std::vector<std::string> all;
      for (auto& e : example_registry()) all.push_back(e.key);
      return cmd_examples_run(g, all);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {  // parse, degree and dimension errors
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return *bounds || *hilbert ? kUsage : kSolver;
  } catch (const std::exception& e) {
    std::cerr << "solver failure: " << e.what() << '\n';
    return kSolver;
  }
  return kUsage;
}
