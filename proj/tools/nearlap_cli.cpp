// nearlap: command-line front end for the nearest-Laplacian library.
//
// Exit codes: 0 success, 1 semantic error, 2 parse error, 3 numerical failure.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "nearlap/nearlap.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode : int { kOk = 0, kSemantic = 1, kParse = 2, kNumerical = 3 };

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw nearlap::Error("SHA-256 digest failed");
  }
  std::ostringstream os;
  for (unsigned int k = 0; k < len; ++k) os << std::hex << std::setw(2) << std::setfill('0') << int(digest[k]);
  return os.str();
}

json input_entry(const std::string& path, const std::string& bytes) {
  return {{"path", path}, {"sha256", sha256_hex(bytes)}};
}

// Every run can be reproduced from the command, params and input digests;
// wall_seconds is the only field that varies between identical runs.
struct RunReport {
  std::string command;
  json inputs = json::object();
  json params = json::object();
  json summary = json::object();
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

  void write(const std::string& path) const {
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json j{{"command", command}, {"inputs", inputs}, {"params", params}, {"summary", summary}, {"wall_seconds", wall}};
    nearlap::detail::write_file(path, j.dump(2) + "\n");
  }
};

json check_report_json(const nearlap::LaplacianCheckReport& c) {
  return {{"row_sum_residual", c.row_sum_residual},
          {"sign_violation", c.sign_violation},
          {"structure_violation", c.structure_violation},
          {"is_valid", c.is_valid}};
}

struct ProjectArgs {
  std::string matrix, edges, out, report;
};

int run_project(const ProjectArgs& a) {
  RunReport rep{"project"};
  const std::string mtext = nearlap::detail::read_file(a.matrix);
  const std::string etext = nearlap::detail::read_file(a.edges);
  const auto A = nearlap::parse_matrix_csv(mtext);
  const auto E = nearlap::parse_edges(etext);
  if (A.n() != E.n()) {
    throw nearlap::DimensionError("matrix has order " + std::to_string(A.n()) + " but edge file declares n = " +
                                  std::to_string(E.n()));
  }
  const auto r = nearlap::nearest_laplacian(A, E);
  const auto check = nearlap::validate_laplacian(r.L, E);

  nearlap::write_matrix_csv(r.L, a.out);
  if (!a.report.empty()) {
    rep.inputs = {{"matrix", input_entry(a.matrix, mtext)}, {"edges", input_entry(a.edges, etext)}};
    rep.params = {{"out", a.out}};
    rep.summary = {{"objective", r.objective},
                   {"relaxed_objective", r.relaxed_objective},
                   {"alpha", r.alpha},
                   {"check", check_report_json(check)}};
    rep.write(a.report);
  }
  std::cout << "objective " << nearlap::format_double(r.objective) << "\n";
  return kOk;
}

struct GenerateArgs {
  std::size_t n = 0, k = 0;
  double beta = 0, s = 0;
  std::uint64_t seed = 0;
  std::string out_dir, report;
};

json params_json(const nearlap::SynthParams& p) {
  return {{"n", p.n},
          {"k", p.k},
          {"beta", p.beta},
          {"s", p.s},
          {"seed", p.seed},
          {"generator", "mt19937_64"},
          {"normal_sampler", "marsaglia_polar"}};
}

int run_generate(const GenerateArgs& a) {
  RunReport rep{"generate"};
  const nearlap::SynthParams p{a.n, a.k, a.beta, a.s, a.seed};
  p.validate();
  const auto inst = nearlap::generate_instance(p);

  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  nearlap::write_matrix_csv(inst.A, dir / "A.csv");
  nearlap::write_matrix_csv(inst.L_star, dir / "Lstar.csv");
  nearlap::write_edges(inst.E, dir / "edges.txt");
  nearlap::detail::write_file(dir / "params.json", params_json(p).dump(2) + "\n");
  if (!a.report.empty()) {
    rep.params = params_json(p);
    rep.summary = {{"edges", inst.E.size()}, {"out_dir", a.out_dir}};
    rep.write(a.report);
  }
  return kOk;
}

struct OracleArgs {
  std::string matrix, edges, report;
  std::size_t max_iters = nearlap::kDefaultSimplexIterations;
};

int run_oracle(const OracleArgs& a) {
  RunReport rep{"oracle"};
  const std::string mtext = nearlap::detail::read_file(a.matrix);
  const std::string etext = nearlap::detail::read_file(a.edges);
  const auto A = nearlap::parse_matrix_csv(mtext);
  const auto E = nearlap::parse_edges(etext);
  if (A.n() != E.n()) throw nearlap::DimensionError("matrix order does not match edge file");
  const double opt = nearlap::oracle_optimum(A, E, a.max_iters);
  if (!a.report.empty()) {
    rep.inputs = {{"matrix", input_entry(a.matrix, mtext)}, {"edges", input_entry(a.edges, etext)}};
    rep.params = {{"max_iters", a.max_iters}};
    rep.summary = {{"optimum", opt}};
    rep.write(a.report);
  }
  std::cout << nearlap::format_double(opt) << "\n";
  return kOk;
}

struct SpectraArgs {
  std::string matrix, out, report;
};

int run_spectra(const SpectraArgs& a) {
  RunReport rep{"spectra"};
  const std::string mtext = nearlap::detail::read_file(a.matrix);
  const auto M = nearlap::parse_matrix_csv(mtext);
  const auto sp = nearlap::eigenvalues(M);
  std::string csv = "re,im\n";
  for (const auto& z : sp.eigenvalues) {
    csv += nearlap::format_double(z.real()) + "," + nearlap::format_double(z.imag()) + "\n";
  }
  nearlap::detail::write_file(a.out, csv);
  if (!a.report.empty()) {
    rep.inputs = {{"matrix", input_entry(a.matrix, mtext)}};
    rep.summary = {{"lambda2_real", sp.lambda2_real}, {"count", sp.eigenvalues.size()}};
    rep.write(a.report);
  }
  std::cout << "lambda2_real " << nearlap::format_double(sp.lambda2_real) << "\n";
  return kOk;
}

struct Table2Args {
  std::size_t n = 300, k = 10, trials = 1000;
  double beta = 0.3;
  std::vector<double> s_list;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::string out, report;
};

int run_table2(const Table2Args& a) {
  RunReport rep{"experiment table2"};
  const nearlap::Lambda2Experiment cfg{a.n, a.k, a.beta, a.trials, a.seed, a.threads};
  if (a.s_list.empty()) throw nearlap::ValidationError("--s-list is empty");
  if (a.trials < 1) throw nearlap::ValidationError("--trials must be >= 1");
  for (double s : a.s_list) nearlap::SynthParams{a.n, a.k, a.beta, s, a.seed}.validate();

  std::string csv = "s,trials,ave,var\n";
  json rows = json::array();
  for (double s : a.s_list) {
    const auto r = nearlap::ave_var(s, cfg);
    csv += nearlap::format_double(r.s) + "," + std::to_string(r.trials) + "," + nearlap::format_double(r.ave) + "," +
           nearlap::format_double(r.var) + "\n";
    rows.push_back({{"s", r.s}, {"ave", r.ave}, {"var", r.var}});
  }
  nearlap::detail::write_file(a.out, csv);
  if (!a.report.empty()) {
    rep.params = {{"n", a.n},         {"k", a.k},         {"beta", a.beta}, {"trials", a.trials},
                  {"s_list", a.s_list}, {"seed", a.seed}, {"threads", a.threads},
                  {"trial_policy", "regenerate structure, weights and noise per trial from mix_seed(seed, trial)"}};
    rep.summary = {{"rows", rows}};
    rep.write(a.report);
  }
  return kOk;
}

struct BenchArgs {
  std::vector<std::size_t> sizes;
  std::size_t repeats = 5;
  std::uint64_t seed = 0;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  nearlap::BenchConfig cfg;
  cfg.sizes = a.sizes;
  cfg.repeats = a.repeats;
  cfg.seed = a.seed;
  if (cfg.repeats < 3) throw nearlap::ValidationError("--repeats must be >= 3");
  if (!std::is_sorted(cfg.sizes.begin(), cfg.sizes.end())) throw nearlap::ValidationError("--sizes must be ascending");
  for (std::size_t n : cfg.sizes) nearlap::SynthParams{n, cfg.k, cfg.beta, cfg.s, cfg.seed}.validate();

  std::ofstream out(a.out, std::ios::binary | std::ios::trunc);
  if (!out) throw nearlap::ValidationError("cannot write '" + a.out + "'");
  out << "n,repeats,median_seconds,min_seconds\n" << std::flush;
  bool any_failed = false;
  nearlap::bench_projection(
      cfg,
      [&](const nearlap::BenchRecord& r) {
        out << r.n << "," << r.repeats << "," << nearlap::format_double(r.median_seconds) << ","
            << nearlap::format_double(r.min_seconds) << "\n"
            << std::flush;
        std::cerr << "n=" << r.n << " median " << r.median_seconds << " s\n";
      },
      [&](const nearlap::BenchFailure& f) {
        any_failed = true;
        std::cerr << "n=" << f.n << " failed: " << f.message << "\n";
      });
  return any_failed ? kNumerical : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nearest graph Laplacian toolkit"};
  app.require_subcommand(1);

  ProjectArgs pa;
  auto* project = app.add_subcommand("project", "Nearest Laplacian (1-norm) to a matrix under a known edge set");
  project->add_option("--matrix", pa.matrix, "Input matrix CSV")->required();
  project->add_option("--edges", pa.edges, "Edge structure file")->required();
  project->add_option("--out", pa.out, "Output Laplacian CSV")->required();
  project->add_option("--report", pa.report, "Optional JSON run report");

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic (L*, A) instance");
  generate->add_option("--n", ga.n, "Node count")->required();
  generate->add_option("--k", ga.k, "Mean degree (even)")->required();
  generate->add_option("--beta", ga.beta, "Rewiring probability")->required();
  generate->add_option("--s", ga.s, "Noise scale")->required();
  generate->add_option("--seed", ga.seed, "RNG seed")->required();
  generate->add_option("--out-dir", ga.out_dir, "Output directory")->required();
  generate->add_option("--report", ga.report, "Optional JSON run report");

  OracleArgs oa;
  auto* oracle = app.add_subcommand("oracle", "Solve the nearest-Laplacian LP with the simplex oracle (n <= 30)");
  oracle->add_option("--matrix", oa.matrix, "Input matrix CSV")->required();
  oracle->add_option("--edges", oa.edges, "Edge structure file")->required();
  oracle->add_option("--max-iters", oa.max_iters, "Simplex pivot limit");
  oracle->add_option("--report", oa.report, "Optional JSON run report");

  SpectraArgs sa;
  auto* spectra = app.add_subcommand("spectra", "Eigenvalues of a matrix as re,im CSV");
  spectra->add_option("--matrix", sa.matrix, "Input matrix CSV")->required();
  spectra->add_option("--out", sa.out, "Output CSV")->required();
  spectra->add_option("--report", sa.report, "Optional JSON run report");

  Table2Args ta;
  auto* experiment = app.add_subcommand("experiment", "Reproduction experiments");
  experiment->require_subcommand(1);
  auto* table2 = experiment->add_subcommand("table2", "Noise scale vs. lambda2 gap statistics");
  table2->add_option("--n", ta.n, "Node count");
  table2->add_option("--k", ta.k, "Mean degree (even)");
  table2->add_option("--beta", ta.beta, "Rewiring probability");
  table2->add_option("--trials", ta.trials, "Trials per noise scale");
  table2->add_option("--s-list", ta.s_list, "Comma-separated noise scales")->delimiter(',')->required();
  table2->add_option("--seed", ta.seed, "RNG seed")->required();
  table2->add_option("--threads", ta.threads, "Worker threads (output is identical for any value)");
  table2->add_option("--out", ta.out, "Output CSV")->required();
  table2->add_option("--report", ta.report, "Optional JSON run report");

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Time the projection at several sizes");
  bench->add_option("--sizes", ba.sizes, "Comma-separated ascending node counts")->delimiter(',')->required();
  bench->add_option("--repeats", ba.repeats, "Timed repeats per size (>= 3)");
  bench->add_option("--seed", ba.seed, "RNG seed")->required();
  bench->add_option("--out", ba.out, "Output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }

  try {
    if (*project) return run_project(pa);
    if (*generate) return run_generate(ga);
    if (*oracle) return run_oracle(oa);
    if (*spectra) return run_spectra(sa);
    if (*table2) return run_table2(ta);
    if (*bench) return run_bench(ba);
  } catch (const nearlap::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const nearlap::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  } catch (const nearlap::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSemantic;
  }
  return kSemantic;
}
