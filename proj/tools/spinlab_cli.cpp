#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "spinlab/algebraic_states.hpp"
#include "spinlab/chain_model.hpp"
#include "spinlab/entanglement.hpp"
#include "spinlab/free_fermion.hpp"
#include "spinlab/quantum_probability.hpp"
#include "spinlab/scaling.hpp"

namespace {

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmtg(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

/// start:stop:step grid; a bare number is a one-point grid.
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> vals;
  if (text.find(',') != std::string::npos) {  // explicit comma list
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) vals.push_back(std::stod(item));
    return vals;
  }
  const auto c1 = text.find(':');
  if (c1 == std::string::npos) {
    vals.push_back(std::stod(text));
    return vals;
  }
  const auto c2 = text.find(':', c1 + 1);
  if (c2 == std::string::npos)
    throw CLI::ValidationError("grid", "expected start:stop:step");
  const double start = std::stod(text.substr(0, c1));
  const double stop = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
  const double step = std::stod(text.substr(c2 + 1));
  if (step <= 0.0) throw CLI::ValidationError("grid", "step must be positive");
  for (double v = start; v <= stop + 1e-12 * std::max(1.0, std::abs(stop));
       v += step)
    vals.push_back(v);
  return vals;
}

struct Output {
  std::string path;  // empty = stdout

  void write(const std::string& text) const {
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << text;
  }
};

std::string metadata(const std::vector<std::pair<std::string, std::string>>& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += "# " + k + "=" + v + "\n";
  return out;
}

int run_spectrum(const spinlab::ChainSpec& spec, bool matrix_path,
                 const Output& out) {
  std::string text = metadata({
      {"command", "spectrum"},
      {"model", spec.model == spinlab::Model::Ising ? "ising" : "xy"},
      {"n", std::to_string(spec.n_sites)},
      {"lambda", fmt17(spec.lambda)},
      {"gamma", fmt17(spec.gamma)},
      {"boundary", spec.boundary == spinlab::Boundary::Open ? "open" : "periodic"},
  });
  text += "k,phi,lambda_k\n";
  if (spec.boundary == spinlab::Boundary::Periodic) {
    const spinlab::MomentumGrid grid = spinlab::momentum_grid(spec);
    for (std::size_t k = 0; k < grid.phis.size(); ++k)
      text += std::to_string(k) + "," + fmt17(grid.phis[k]) + "," +
              fmt17(spinlab::dispersion(spec, grid.phis[k])) + "\n";
  } else if (matrix_path) {
    const auto sol = spinlab::solve(spinlab::build_quadratic_form(spec));
    for (Eigen::Index k = 0; k < sol.lambdas.size(); ++k)
      text += std::to_string(k) + ",," + fmt17(sol.lambdas[k]) + "\n";
  } else {
    const auto roots = spinlab::open_bc_real_roots(spec);
    for (std::size_t k = 0; k < roots.size(); ++k)
      text += std::to_string(k) + "," + fmt17(roots[k]) + "," +
              fmt17(spinlab::dispersion(spec, roots[k])) + "\n";
  }
  out.write(text);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinlab: free-fermion spin chains, entanglement and algebraic states"};
  app.require_subcommand(1);
  app.set_config("--config");

  int threads = 1;
  app.add_option("--threads", threads, "worker threads (sweeps)")
      ->envname("SPINLAB_THREADS");
  unsigned seed = 12345;
  app.add_option("--seed", seed, "RNG seed echoed into metadata")
      ->envname("SPINLAB_SEED");

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "single-particle spectrum");
  std::string sp_model = "ising", sp_boundary = "open", sp_parity = "even";
  int sp_n = 8;
  double sp_lambda = 1.0, sp_gamma = 1.0;
  bool sp_matrix = false;
  std::string sp_out;
  sp->add_option("--model", sp_model)->check(CLI::IsMember({"ising", "xy"}));
  sp->add_option("--n", sp_n)->check(CLI::Range(2, 100000));
  sp->add_option("--lambda", sp_lambda)->envname("SPINLAB_LAMBDA");
  sp->add_option("--gamma", sp_gamma);
  sp->add_option("--boundary", sp_boundary)
      ->check(CLI::IsMember({"open", "periodic"}));
  sp->add_option("--parity", sp_parity)->check(CLI::IsMember({"even", "odd"}));
  sp->add_flag("--matrix", sp_matrix,
               "use the matrix eigensolve for open chains (required for lambda=0)");
  sp->add_option("-o,--output", sp_out);

  // ---- entropy-scan ----
  auto* es = app.add_subcommand("entropy-scan", "block entropy vs block size");
  std::string es_preset, es_method = "thermo", es_l = "10:100:10", es_out;
  double es_lambda = 1.0, es_gamma = 1.0;
  bool es_fit = false, es_log2 = false;
  int es_quad = 65536;
  es->add_option("--preset", es_preset,
                 "xx-critical | ising-critical | off-critical");
  es->add_option("--method", es_method)->check(CLI::IsMember({"finite", "thermo"}));
  es->add_option("--lambda", es_lambda);
  es->add_option("--gamma", es_gamma);
  es->add_option("--l", es_l, "block sizes, start:stop:step");
  es->add_option("--quad", es_quad, "quadrature nodes for the thermo route");
  es->add_flag("--fit-c", es_fit, "append fitted central charge row");
  es->add_flag("--log2", es_log2, "report entropy in bits");
  es->add_option("-o,--output", es_out);

  // ---- schmidt ----
  auto* sc = app.add_subcommand("schmidt", "half-chain Schmidt-gap sweep");
  std::string sc_n = "10", sc_lambda = "0:2:0.05", sc_format = "csv", sc_out;
  std::string sc_model = "ising";
  double sc_gamma = 1.0;
  sc->add_option("--n", sc_n, "chain sizes, start:stop:step (even)");
  sc->add_option("--lambda", sc_lambda, "field grid, start:stop:step");
  sc->add_option("--model", sc_model)->check(CLI::IsMember({"ising", "xy"}));
  sc->add_option("--gamma", sc_gamma);
  std::string sc_boundary = "periodic";
  sc->add_option("--boundary", sc_boundary)
      ->check(CLI::IsMember({"open", "periodic"}));
  sc->add_option("--format", sc_format)->check(CLI::IsMember({"csv", "json"}));
  sc->add_option("-o,--output", sc_out);

  // ---- collapse ----
  auto* co = app.add_subcommand("collapse", "finite-size-scaling collapse");
  std::string co_input, co_out;
  double co_lambda_c = 1.0;
  co->add_option("--input", co_input, "sweep CSV")->required();
  co->add_option("--lambda-c", co_lambda_c);
  co->add_option("-o,--output", co_out);

  // ---- bell ----
  auto* be = app.add_subcommand("bell", "Bell inequality and CHSH");
  bool be_paper = false, be_chsh = false;
  double be_phi1 = 0.0, be_phi2 = 0.0, be_theta1 = 0.0, be_theta2 = 0.0;
  std::string be_out;
  be->add_flag("--paper-angles", be_paper,
               "phi = (0, pi/3), theta = (pi/2, pi/6)");
  be->add_flag("--chsh-max", be_chsh, "also maximize the CHSH expectation");
  be->add_option("--phi1", be_phi1);
  be->add_option("--phi2", be_phi2);
  be->add_option("--theta1", be_theta1);
  be->add_option("--theta2", be_theta2);
  be->add_option("-o,--output", be_out);

  // ---- gns ----
  auto* gn = app.add_subcommand("gns", "GNS construction presets");
  std::string gn_preset = "m2-lambda", gn_out;
  double gn_lambda = 0.5, gn_theta = 0.0;
  gn->add_option("--preset", gn_preset)
      ->check(CLI::IsMember({"m2-lambda", "two-fermion"}));
  gn->add_option("--lambda", gn_lambda, "state weight for m2-lambda");
  gn->add_option("--theta", gn_theta, "two-fermion state angle");
  gn->add_option("-o,--output", gn_out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sp->parsed()) {
      spinlab::ChainSpec spec;
      spec.model = sp_model == "ising" ? spinlab::Model::Ising : spinlab::Model::XY;
      spec.n_sites = sp_n;
      spec.lambda = sp_lambda;
      spec.gamma = sp_gamma;
      spec.boundary = sp_boundary == "open" ? spinlab::Boundary::Open
                                            : spinlab::Boundary::Periodic;
      if (spec.boundary == spinlab::Boundary::Periodic)
        spec.parity = sp_parity == "even" ? spinlab::Parity::Even
                                          : spinlab::Parity::Odd;
      spec.validate();
      if (spec.boundary == spinlab::Boundary::Open && !sp_matrix &&
          spec.lambda == 0.0) {
        std::cerr << "spectrum: the transcendental root path needs lambda != 0; "
                     "pass --matrix\n";
        return 2;
      }
      return run_spectrum(spec, sp_matrix, Output{sp_out});
    }

    if (es->parsed()) {
      if (es_preset == "xx-critical") {
        es_lambda = 0.5;
        es_gamma = 0.0;
      } else if (es_preset == "ising-critical") {
        es_lambda = 1.0;
        es_gamma = 1.0;
      } else if (es_preset == "off-critical") {
        es_lambda = 0.5;
        es_gamma = 0.5;
      } else if (!es_preset.empty()) {
        std::cerr << "entropy-scan: unknown preset " << es_preset << "\n";
        return 2;
      }
      std::vector<int> block_sizes;
      for (double v : parse_grid(es_l)) block_sizes.push_back(int(v + 0.5));
      const double unit = es_log2 ? 1.0 / std::log(2.0) : 1.0;
      std::string text = metadata({{"command", "entropy-scan"},
                                   {"method", es_method},
                                   {"lambda", fmt17(es_lambda)},
                                   {"gamma", fmt17(es_gamma)},
                                   {"unit", es_log2 ? "bits" : "nats"}});
      text += "L,entropy\n";
      std::vector<std::pair<double, double>> pts;
      for (int block : block_sizes) {
        double s;
        if (es_method == "thermo") {
          s = spinlab::entropy_thermo(es_lambda, es_gamma, block, es_quad);
        } else {
          spinlab::ChainSpec spec;
          spec.model = spinlab::Model::XY;
          spec.n_sites = 2 * block;  // half-chain block of a periodic chain
          spec.lambda = es_lambda;
          spec.gamma = es_gamma;
          spec.boundary = spinlab::Boundary::Periodic;
          spec.parity = spinlab::Parity::Even;
          const auto sol = spinlab::solve(spinlab::build_quadratic_form(spec));
          const auto half =
              spinlab::restrict_correlations(spinlab::correlations(sol), block);
          s = spinlab::entanglement_spectrum(half).entropy;
        }
        pts.emplace_back(double(block), s);
        text += std::to_string(block) + "," + fmt17(s * unit) + "\n";
      }
      if (es_fit) {
        const auto fit = spinlab::fit_central_charge(pts);
        text += "c_fit," + fmt17(fit.c) + "\n";
      }
      Output{es_out}.write(text);
      return 0;
    }

    if (sc->parsed()) {
      std::vector<int> ns;
      for (double v : parse_grid(sc_n)) ns.push_back(int(v + 0.5));
      const auto lambdas = parse_grid(sc_lambda);
      const auto model =
          sc_model == "ising" ? spinlab::Model::Ising : spinlab::Model::XY;
      const auto result = spinlab::scaling::sweep(
          ns, lambdas, model, sc_gamma,
          sc_boundary == "open" ? spinlab::Boundary::Open
                                : spinlab::Boundary::Periodic);
      std::string text;
      if (sc_format == "json") {
        text = spinlab::scaling::to_json(result);
      } else {
        text = metadata({{"command", "schmidt"},
                         {"model", sc_model},
                         {"gamma", fmt17(sc_gamma)},
                         {"seed", std::to_string(seed)}});
        text += spinlab::scaling::to_csv(result);
      }
      Output{sc_out}.write(text);
      return 0;
    }

    if (co->parsed()) {
      std::ifstream f(co_input);
      if (!f) {
        std::cerr << "collapse: cannot read " << co_input << "\n";
        return 2;
      }
      spinlab::scaling::SweepResult result;
      std::string line;
      while (std::getline(f, line)) {
        if (line.empty() || line[0] == '#' || line[0] == 'N') continue;
        std::stringstream ss(line);
        spinlab::scaling::SweepRow row;
        char comma;
        ss >> row.n_sites >> comma >> row.lambda >> comma >> row.schmidt_gap >>
            comma >> row.entropy >> comma >> row.ground_energy;
        if (ss.fail()) continue;
        result.rows.push_back(row);
      }
      const auto fit = spinlab::scaling::collapse(result, co_lambda_c);
      nlohmann::ordered_json j;
      j["lambda_c"] = co_lambda_c;
      j["mu1"] = fit.mu1;
      j["mu2"] = fit.mu2;
      j["cost"] = fit.cost;
      j["nu_est"] = fit.nu_est;
      j["beta_est"] = fit.beta_est;
      Output{co_out}.write(j.dump(2) + "\n");
      return 0;
    }

    if (be->parsed()) {
      if (be_paper) {
        be_phi1 = 0.0;
        be_phi2 = M_PI / 3.0;
        be_theta1 = M_PI / 2.0;
        be_theta2 = M_PI / 6.0;
      }
      const auto bc = spinlab::bell::bell_check({be_phi1, be_phi2},
                                                {be_theta1, be_theta2});
      std::string text = "lhs=" + fmtg(bc.lhs) + " rhs=" + fmtg(bc.rhs) +
                         " violated=" + (bc.violated ? "true" : "false") + "\n";
      if (be_chsh)
        text += "chsh_max=" + fmt17(spinlab::bell::chsh_maximum()) + "\n";
      Output{be_out}.write(text);
      return 0;
    }

    if (gn->parsed()) {
      spinlab::alg::FiniteAlgebra algebra;
      spinlab::alg::AlgState state{Eigen::MatrixXcd()};
      if (gn_preset == "m2-lambda") {
        Eigen::MatrixXcd e12 = Eigen::MatrixXcd::Zero(2, 2);
        e12(0, 1) = 1.0;
        algebra = spinlab::alg::close_algebra({e12});
        Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
        rho(0, 0) = gn_lambda;
        rho(1, 1) = 1.0 - gn_lambda;
        state = spinlab::alg::density_state(rho);
      } else {
        const auto space = spinlab::alg::two_fermion_space();
        algebra = spinlab::alg::close_algebra(space.generators);
        state = spinlab::alg::restrict_state(
            spinlab::alg::vector_state(spinlab::alg::psi_theta(gn_theta)),
            algebra);
      }
      const auto res = spinlab::alg::gns(algebra, state);
      const auto purity = spinlab::alg::purity_report(res);
      std::string text;
      text += "algebra_dim=" + std::to_string(algebra.basis.size()) + "\n";
      text += "hilbert_dim=" + std::to_string(res.hilbert_dim) + "\n";
      text += "blocks=" + std::to_string(res.block_projectors.size()) + "\n";
      text += "entropy=" + fmt17(res.entropy) + "\n";
      text += "commutant_dim=" + std::to_string(purity.commutant_dim) + "\n";
      text += std::string("irreducible=") +
              (purity.is_irreducible ? "true" : "false") + "\n";
      Output{gn_out}.write(text);
      return 0;
    }
  } catch (const CLI::Error& e) {
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
