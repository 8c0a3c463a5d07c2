// Command-line front end: seed / extend / ecop / verify / vrad / horn.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "excone/pipeline.hpp"
#include "excone/volume.hpp"

namespace {

using namespace excone;

Rat parse_rat_flag(const std::string& s) { return Rat::parse(s); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

Certificate load_certificate(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return Certificate::from_json(buf.str());
}

int print_verify(const VerifyReport& rep) {
  for (const auto& c : rep.checks) {
    std::cout << (c.pass ? "PASS " : "FAIL ") << c.name;
    if (!c.detail.empty()) std::cout << "  [" << c.detail << "]";
    std::cout << "\n";
  }
  std::cout << (rep.all_pass() ? "all checks passed" : "verification FAILED") << "\n";
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exceptional matrix workbench: construct and exactly certify "
               "doubly nonnegative / copositive matrices, and estimate cone "
               "volume radii"};
  app.require_subcommand(1);

  // ---- seed ----
  auto* seed = app.add_subcommand("seed", "search for a 5x5 seed certificate");
  std::string seed_eps = "1/20", seed_out = "seed.json", seed_mode = "auto";
  int seed_m = 6, seed_mp = 3;
  long seed_bound = 1000000;
  seed->add_option("--epsilon", seed_eps, "target -<A5,H> as a rational, e.g. 1/20");
  seed->add_option("--m", seed_m, "number of cosine coefficients");
  seed->add_option("--m-prime", seed_mp, "Gram basis cutoff");
  seed->add_option("--out", seed_out, "output certificate path");
  seed->add_option("--mode", seed_mode, "auto|sos-cos|sos-full|psd5|psd-family");
  seed->add_option("--denominator-bound", seed_bound, "rounding denominator bound");

  // ---- extend ----
  auto* extend = app.add_subcommand("extend", "grow a seed certificate to size n");
  std::string ext_cert, ext_out = "extended.json";
  int ext_n = 6;
  extend->add_option("--cert", ext_cert, "input e-DNN certificate")->required();
  extend->add_option("--n", ext_n, "target size")->required();
  extend->add_option("--out", ext_out, "output certificate path");

  // ---- ecop ----
  auto* ecop = app.add_subcommand("ecop", "construct a copositive companion");
  std::string ecop_cert, ecop_out = "ecop.json", ecop_epsp = "1/10";
  int ecop_k = 1;
  ecop->add_option("--cert", ecop_cert, "input e-DNN certificate")->required();
  ecop->add_option("--k", ecop_k, "multiplier power (1 or 2)");
  ecop->add_option("--epsilon-prime", ecop_epsp, "target -<C,A> as a rational");
  ecop->add_option("--out", ecop_out, "output certificate path");

  // ---- verify ----
  auto* verify = app.add_subcommand("verify", "re-run all exact checks of a certificate");
  std::string verify_path;
  verify->add_option("file", verify_path, "certificate file")->required();

  // ---- vrad ----
  auto* vrad = app.add_subcommand("vrad", "Monte Carlo volume-radius estimates");
  int vrad_n = 3;
  std::string vrad_cones = "nn,psd,dnn", vrad_out, vrad_format = "csv";
  std::int64_t vrad_samples = 100000;
  std::uint64_t vrad_seed = 1;
  vrad->add_option("--n", vrad_n, "matrix size");
  vrad->add_option("--cones", vrad_cones, "comma list from nn,psd,dnn,spn");
  vrad->add_option("--samples", vrad_samples, "sample count");
  vrad->add_option("--seed", vrad_seed, "RNG seed");
  vrad->add_option("--out", vrad_out, "output file (stdout when omitted)");
  vrad->add_option("--format", vrad_format, "csv|json");

  // ---- horn ----
  auto* horn = app.add_subcommand("horn", "print the Horn matrix in the exact grammar");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*seed) {
      PipelineConfig config;
      config.epsilon = parse_rat_flag(seed_eps);
      config.m = seed_m;
      config.m_prime = seed_mp;
      config.rounding.denominator_bound = seed_bound;
      if (seed_mode == "auto") config.seed_strategy = SeedStrategy::Auto;
      else if (seed_mode == "sos-cos") config.seed_strategy = SeedStrategy::SosCos;
      else if (seed_mode == "sos-full") config.seed_strategy = SeedStrategy::SosFull;
      else if (seed_mode == "psd5") config.seed_strategy = SeedStrategy::Psd5;
      else if (seed_mode == "psd-family") config.seed_strategy = SeedStrategy::PsdFamily;
      else throw std::runtime_error("unknown seed mode " + seed_mode);
      const Certificate cert = run_seed(config);
      write_file(seed_out, cert.to_json());
      std::cout << "seed certificate written to " << seed_out << " (scope " << cert.psd_scope
                << ", pairing " << cert.pairing.str() << ")\n";
      return 0;
    }
    if (*extend) {
      const Certificate cert = run_extend(load_certificate(ext_cert), ext_n);
      write_file(ext_out, cert.to_json());
      std::cout << "extended certificate written to " << ext_out << " (n=" << ext_n << ")\n";
      return 0;
    }
    if (*ecop) {
      PipelineConfig config;
      config.k = ecop_k;
      config.allow_k2_fallback = (ecop_k == 1);
      config.epsilon_prime = parse_rat_flag(ecop_epsp);
      const Certificate cert = run_ecop(load_certificate(ecop_cert), config);
      write_file(ecop_out, cert.to_json());
      std::cout << "copositive certificate written to " << ecop_out << " (k=" << cert.k
                << ", pairing " << cert.pairing.str() << ")\n";
      return 0;
    }
    if (*verify) {
      return print_verify(run_verify(verify_path));
    }
    if (*vrad) {
      std::vector<VradEstimate> rows;
      std::stringstream cones_ss(vrad_cones);
      std::string cone;
      while (std::getline(cones_ss, cone, ',')) {
        ConePredicate pred;
        if (cone == "nn") {
          pred = [](const SymMatrix& m) { return is_nn(m).verdict; };
        } else if (cone == "psd") {
          pred = [](const SymMatrix& m) { return is_psd(m).verdict; };
        } else if (cone == "dnn") {
          pred = [](const SymMatrix& m) {
            return (is_nn(m).verdict == Verdict::In && is_psd(m).verdict == Verdict::In)
                       ? Verdict::In
                       : Verdict::Out;
          };
        } else if (cone == "spn") {
          pred = [](const SymMatrix& m) { return is_spn(m).verdict; };
        } else {
          throw std::runtime_error("unknown cone " + cone);
        }
        rows.push_back(vrad_estimate(vrad_n, pred, vrad_samples, vrad_seed, cone));
      }
      const std::string text = (vrad_format == "json") ? vrad_json(rows) : vrad_csv(rows);
      if (vrad_out.empty())
        std::cout << text;
      else {
        write_file(vrad_out, text);
        std::cout << "report written to " << vrad_out << "\n";
      }
      return 0;
    }
    if (*horn) {
      const ExactSymMatrix h = horn_matrix();
      for (int i = 0; i < h.size(); ++i) {
        for (int j = 0; j < h.size(); ++j)
          std::cout << h.at(i, j).str() << (j + 1 < h.size() ? " " : "");
        std::cout << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
