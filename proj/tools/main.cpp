// fplab: prime-field set algebra, spectral analysis, covering algorithms, and
// seeded experiment sweeps. Exit codes: 0 all assertions pass, 1 assertion
// failure, 2 usage error.

#include <complex>
#include <optional>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fplab/constructions.hpp"
#include "fplab/covering.hpp"
#include "fplab/experiments.hpp"
#include "fplab/set_io.hpp"
#include "fplab/structure.hpp"

namespace {

using fplab::Json;

struct GlobalOpts {
  std::uint64_t p = 0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "json";
  unsigned threads = 1;
  double slack = 0.9;
};

void print_or_write(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for writing: " + out_path);
  f << text;
}

Json set_summary(const fplab::FpSet& s) {
  Json j;
  j["p"] = s.prime();
  j["card"] = s.size();
  j["density"] = s.density();
  return j;
}

int cmd_experiment(const GlobalOpts& g, const std::string& name,
                   const std::vector<std::uint64_t>& p_list, const std::vector<double>& densities,
                   const std::vector<std::int64_t>& exponents, std::uint64_t trials) {
  fplab::ExperimentConfig cfg;
  cfg.experiment = name;
  cfg.p_list = p_list;
  if (cfg.p_list.empty() && g.p != 0) cfg.p_list.push_back(g.p);
  cfg.densities = densities;
  cfg.exponents = exponents;
  cfg.trials = trials;
  cfg.seed = g.seed;
  cfg.slack = g.slack;
  cfg.threads = g.threads;
  cfg.format = fplab::parse_report_format(g.format);
  cfg.out_path = g.out;

  fplab::ExperimentReport report = fplab::run_experiment(cfg);
  const std::string text = cfg.format == fplab::ReportFormat::Json
                               ? fplab::report_to_json(report)
                               : fplab::report_to_csv(report);
  print_or_write(text, g.out);
  if (!report.all_pass) {
    for (const auto& f : report.failures) std::cerr << "FAILED ASSERTION: " << f << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prime-field sum-product laboratory"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOpts g;
  app.add_option("--p", g.p, "prime modulus");
  app.add_option("--seed", g.seed, "seed for all random draws");
  app.add_option("--out", g.out, "output path (stdout when omitted)");
  app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--threads", g.threads, "worker threads for experiment trials");
  app.add_option("--slack", g.slack, "tolerance factor for asymptotic assertions");

  // experiment <name>
  auto* exp_cmd = app.add_subcommand("experiment", "run a named experiment sweep");
  exp_cmd->fallthrough();
  std::string exp_name;
  std::vector<std::uint64_t> exp_primes;
  std::vector<double> exp_densities;
  std::vector<std::int64_t> exp_exponents;
  std::uint64_t exp_trials = 20;
  exp_cmd->add_option("name", exp_name, "experiment name")
      ->required()
      ->check(CLI::IsMember(fplab::experiment_names()));
  exp_cmd->add_option("--primes", exp_primes, "prime list (falls back to --p, then defaults)");
  exp_cmd->add_option("--densities", exp_densities, "density list");
  exp_cmd->add_option("--exponents", exp_exponents, "exponent tuple");
  exp_cmd->add_option("--trials", exp_trials, "trials per configuration");

  // sumset
  auto* sum_cmd = app.add_subcommand("sumset", "A+B (or A-B) of two fpset files");
  sum_cmd->fallthrough();
  std::string sum_a, sum_b;
  bool sum_negate = false;
  sum_cmd->add_option("--a", sum_a, "fpset file for A")->required();
  sum_cmd->add_option("--b", sum_b, "fpset file for B")->required();
  sum_cmd->add_flag("--negate-b", sum_negate, "compute A + (-B) = A - B");

  // transform
  auto* tr_cmd = app.add_subcommand("transform", "spectrum of a set's indicator function");
  tr_cmd->fallthrough();
  std::string tr_in;
  tr_cmd->add_option("--in", tr_in, "fpset file")->required();

  // aip
  auto* aip_cmd = app.add_subcommand("aip", "root-preimage intersection defect");
  aip_cmd->fallthrough();
  std::vector<std::string> aip_sets;
  std::vector<std::int64_t> aip_exponents;
  aip_cmd->add_option("--sets", aip_sets, "fpset files, one per exponent")->required();
  aip_cmd->add_option("--exponents", aip_exponents, "exponent tuple")->required();

  // rho
  auto* rho_cmd = app.add_subcommand("rho", "additive distance between two sets");
  rho_cmd->fallthrough();
  std::string rho_a, rho_b;
  rho_cmd->add_option("--a", rho_a, "fpset file")->required();
  rho_cmd->add_option("--b", rho_b, "fpset file")->required();

  // cover
  auto* cover_cmd = app.add_subcommand("cover", "greedy covering by translates");
  cover_cmd->fallthrough();
  std::string cover_in;
  double cover_eps = -1.0;
  cover_cmd->add_option("--in", cover_in, "fpset file for P")->required();
  cover_cmd->add_option("--eps", cover_eps, "popularity parameter; omit for the disjoint greedy");

  // extract
  auto* ex_cmd = app.add_subcommand("extract", "cell decomposition of Y against the cover of P");
  ex_cmd->fallthrough();
  std::string ex_y, ex_t, ex_p;
  double ex_eta = 1.0, ex_omega = 1.0;
  ex_cmd->add_option("--y", ex_y, "fpset file for Y")->required();
  ex_cmd->add_option("--t", ex_t, "fpset file for T")->required();
  ex_cmd->add_option("--core", ex_p, "fpset file for P")->required();
  ex_cmd->add_option("--eta-floor", ex_eta, "cell size floor numerator");
  ex_cmd->add_option("--omega-x", ex_omega, "cell size floor denominator");

  // construct
  auto* con_cmd = app.add_subcommand("construct", "emit a named set in fpset v1 format");
  con_cmd->fallthrough();
  std::string con_kind, con_base, con_out2;
  std::uint64_t con_start = 0, con_step = 1, con_len = 0, con_q = 0;
  double con_density = 0.5, con_omega = 0.05, con_omega1 = 0.05;
  con_cmd->add_option("--kind", con_kind, "ap|random|quadratic_residues|gowers|singer|counterexample")
      ->required()
      ->check(CLI::IsMember({"ap", "random", "quadratic_residues", "gowers", "singer", "counterexample"}));
  con_cmd->add_option("--start", con_start, "ap start");
  con_cmd->add_option("--step", con_step, "ap step");
  con_cmd->add_option("--len", con_len, "ap length");
  con_cmd->add_option("--density", con_density, "random density");
  con_cmd->add_option("--q", con_q, "singer order (p = q^2+q+1)");
  con_cmd->add_option("--base", con_base, "fpset file for the gowers base set");
  con_cmd->add_option("--omega", con_omega, "counterexample outer density");
  con_cmd->add_option("--omega1", con_omega1, "counterexample inner density");
  con_cmd->add_option("--out2", con_out2, "second output file (counterexample W1)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // parse problems are usage errors
  }

  try {
    if (exp_cmd->parsed())
      return cmd_experiment(g, exp_name, exp_primes, exp_densities, exp_exponents, exp_trials);

    if (sum_cmd->parsed()) {
      fplab::FpSet a = fplab::read_fpset_file(sum_a);
      fplab::FpSet b = fplab::read_fpset_file(sum_b);
      fplab::FpSet result = fplab::sumset(a, sum_negate ? b.negated() : b);
      print_or_write(fplab::to_fpset_text(result), g.out);
      return 0;
    }

    if (tr_cmd->parsed()) {
      fplab::FpSet a = fplab::read_fpset_file(tr_in);
      fplab::GridFunction f = fplab::GridFunction::indicator(a);
      fplab::Spectrum s = fplab::dft(f);
      if (g.format == "csv") {
        std::string text = "xi,re,im,abs\n";
        for (std::size_t xi = 0; xi < s.coeffs.size(); ++xi) {
          Json re = s.coeffs[xi].real(), im = s.coeffs[xi].imag(), ab = std::abs(s.coeffs[xi]);
          text += std::to_string(xi) + "," + re.dump() + "," + im.dump() + "," + ab.dump() + "\n";
        }
        print_or_write(text, g.out);
      } else {
        Json j = set_summary(a);
        j["wiener_norm"] = fplab::wiener_norm(f);
        j["parseval_defect"] = fplab::parseval_defect(f);
        Json coeffs = Json::array();
        for (const auto& c : s.coeffs) coeffs.push_back(Json::array({c.real(), c.imag()}));
        j["coeffs"] = coeffs;
        print_or_write(j.dump(2) + "\n", g.out);
      }
      return 0;
    }

    if (aip_cmd->parsed()) {
      if (aip_sets.size() != aip_exponents.size())
        throw std::invalid_argument("aip: need exactly one set file per exponent");
      std::vector<fplab::FpSet> sets;
      for (const auto& path : aip_sets) sets.push_back(fplab::read_fpset_file(path));
      for (const auto& s : sets) fplab::require_same_field(sets.front(), s);
      fplab::ExponentTuple tuple =
          fplab::classify_exponent_tuple(aip_exponents, *sets.front().context());
      fplab::AipResult res = fplab::aip_defect(sets, tuple);
      Json j;
      j["p"] = sets.front().prime();
      j["intersection_card"] = res.intersection.size();
      j["predicted"] = res.predicted;
      j["defect"] = res.defect;
      j["generic"] = tuple.generic;
      j["coprime"] = tuple.coprime;
      print_or_write(j.dump(2) + "\n", g.out);
      return 0;
    }

    if (rho_cmd->parsed()) {
      fplab::FpSet a = fplab::read_fpset_file(rho_a);
      fplab::FpSet b = fplab::read_fpset_file(rho_b);
      fplab::require_same_field(a, b);
      fplab::DistanceReport d = fplab::additive_distance(fplab::GridFunction::indicator(a),
                                                         fplab::GridFunction::indicator(b));
      Json j;
      j["p"] = a.prime();
      j["rho"] = d.rho;
      j["rho_star"] = d.rho_star;
      j["argmax_point"] = d.argmax_point;
      print_or_write(j.dump(2) + "\n", g.out);
      return 0;
    }

    if (cover_cmd->parsed()) {
      fplab::FpSet p_set = fplab::read_fpset_file(cover_in);
      Json j = set_summary(p_set);
      if (cover_eps < 0.0) {
        fplab::FpSet x = fplab::ruzsa_cover(p_set);
        j["algorithm"] = "disjoint-greedy";
        j["x_card"] = x.size();
        j["translates"] = x.elements();
      } else {
        fplab::CoveringResult res = fplab::popular_cover(p_set, cover_eps);
        j["algorithm"] = "popular-greedy";
        j["eps"] = res.eps;
        j["kappa"] = res.kappa;
        j["x_card"] = res.translates.size();
        j["size_cap"] = res.size_cap;
        j["max_pairwise"] = res.max_pairwise;
        j["coverage"] = res.certified.coverage;
        j["size_ok"] = res.certified.size_bound;
        j["pairwise_ok"] = res.certified.pairwise;
        j["translates"] = res.translates.elements();
        if (!(res.certified.coverage && res.certified.size_bound && res.certified.pairwise)) {
          print_or_write(j.dump(2) + "\n", g.out);
          std::cerr << "FAILED ASSERTION: popular covering certificates\n";
          return 1;
        }
      }
      print_or_write(j.dump(2) + "\n", g.out);
      return 0;
    }

    if (ex_cmd->parsed()) {
      fplab::FpSet y = fplab::read_fpset_file(ex_y);
      fplab::FpSet t = fplab::read_fpset_file(ex_t);
      fplab::FpSet p_set = fplab::read_fpset_file(ex_p);
      fplab::ExtractionResult res = fplab::structure_extract(y, t, p_set, ex_eta, ex_omega);
      Json j;
      j["p"] = y.prime();
      j["x_card"] = res.shifts.size();
      j["e_card"] = res.exceptional.size();
      j["containment"] = res.containment;
      j["doubling"] = res.doubling;
      j["k_ratio"] = res.k_ratio;
      j["independent_count"] = res.independent_count;
      j["growth_sum"] = res.growth_sum;
      j["yt_card"] = res.yt_size;
      j["shifts"] = res.shifts.elements();
      print_or_write(j.dump(2) + "\n", g.out);
      return res.containment ? 0 : 1;
    }

    if (con_cmd->parsed()) {
      if (g.p == 0) throw std::invalid_argument("construct: --p is required");
      fplab::FieldRef ctx = fplab::make_field(g.p);
      if (con_kind == "counterexample") {
        auto [w, w1] = fplab::coprimality_counterexample(ctx, con_omega, con_omega1);
        if (g.out.empty() || con_out2.empty())
          throw std::invalid_argument("counterexample: --out and --out2 are both required");
        fplab::write_fpset_file(w, g.out);
        fplab::write_fpset_file(w1, con_out2);
        return 0;
      }
      fplab::NamedConstructionParams params;
      params.start = con_start;
      params.step = con_step;
      params.len = con_len == 0 ? g.p : con_len;
      params.density = con_density;
      params.seed = g.seed;
      params.q = con_q;
      std::optional<fplab::FpSet> base;
      if (con_kind == "gowers") {
        base = fplab::read_fpset_file(con_base);
        fplab::require_same_field(*base, fplab::FpSet(ctx));
        params.base = &*base;
      }
      fplab::FpSet s = fplab::named_construction(ctx, con_kind, params);
      print_or_write(fplab::to_fpset_text(s), g.out);
      return 0;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
