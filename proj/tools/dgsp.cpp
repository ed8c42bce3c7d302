// Command-line front end for the Jordan-block destruction pipeline.
//
// Exit codes: 0 success, 1 usage error, 2 numerical failure (a partial JSON
// summary is still printed). Stdout carries exactly one JSON document; all
// logging goes to stderr. File outputs are byte-deterministic for a fixed
// command line: wall-clock timing appears only in the stdout summary, never
// in report.json.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "dgsp/dgsp.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace dgsp;

namespace {

constexpr std::uint64_t kDefaultSeed = 20240708;  // documented default

Digraph load_graph(const std::string& path, const std::string& format) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::string fmt = format;
  if (fmt == "auto")
    fmt = fs::path(path).extension() == ".mtx" ? "mtx" : "edges";
  if (fmt == "mtx") return parse_matrix_market(in);
  if (fmt == "edges") return parse_edge_list(in);
  throw std::runtime_error("unknown format: " + fmt);
}

void save_graph(const fs::path& path, const Digraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_edge_list(out, g);
}

void write_json_file(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << "\n";
}

ShiftMode parse_mode(const std::string& mode) {
  if (mode == "adjacency") return ShiftMode::adjacency();
  if (mode == "laplacian-in") return ShiftMode::laplacian(DegreeConvention::InDegree);
  if (mode == "laplacian-out") return ShiftMode::laplacian(DegreeConvention::OutDegree);
  throw std::runtime_error("unknown mode: " + mode);
}

Eigen::MatrixXd shift_of(const Digraph& g, const ShiftMode& m) {
  return m.is_laplacian() ? laplacian_matrix(g, m.convention) : adjacency_matrix(g);
}

json analyze_json(const Digraph& g, const ShiftMode& mode, const Tolerances& tol,
                  const fs::path* angles_csv) {
  Eigen::MatrixXd shift = shift_of(g, mode);
  EigenPairs ep = eig_general(shift);
  Eigen::VectorXd sv = singular_values(ep.vectors);
  Eigen::MatrixXd d = subspace_angles(ep.vectors);
  const int n = ep.size();
  double min_angle = 90.0;
  std::vector<int> hist(90, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      min_angle = std::min(min_angle, d(i, j));
      int bin = std::min(89, static_cast<int>(d(i, j)));
      ++hist[bin];
    }
  if (n == 1) min_angle = 90.0;
  if (angles_csv) {
    std::ofstream out(*angles_csv);
    out << "bin_lo_deg,bin_hi_deg,count\n";
    for (int b = 0; b < 90; ++b)
      out << b << "," << b + 1 << "," << hist[b] << "\n";
  }
  double smin = sv(n - 1), smax = sv(0);
  json j;
  j["n"] = g.num_vertices();
  j["edges"] = g.num_edges();
  j["sigma_min"] = smin;
  j["sigma_max"] = smax;
  j["kappa"] = smin > 0 ? smax / smin : std::numeric_limits<double>::infinity();
  j["min_angle_deg"] = min_angle;
  j["numerical_rank"] = numerical_rank(ep.vectors, tol.eps_rank);
  j["full_rank"] = numerical_rank(ep.vectors, tol.eps_rank) == n;
  return j;
}

void write_spectrum_csv(const fs::path& path, const FourierBasis& fb,
                        const Eigen::VectorXcd& coeff) {
  std::ofstream out(path);
  out << "index,eigenvalue_re,eigenvalue_im,tv,coefficient_re,coefficient_im\n";
  for (int k = 0; k < fb.size(); ++k)
    out << k << "," << fb.eigenvalues(k).real() << "," << fb.eigenvalues(k).imag()
        << "," << fb.tv(k) << "," << coeff(k).real() << "," << coeff(k).imag()
        << "\n";
}

void write_basis_csv(const fs::path& path, const Eigen::MatrixXcd& v) {
  // column-major: one line per (col, row) pair
  std::ofstream out(path);
  out << "col,row,re,im\n";
  for (int c = 0; c < v.cols(); ++c)
    for (int r = 0; r < v.rows(); ++r)
      out << c << "," << r << "," << v(r, c).real() << "," << v(r, c).imag()
          << "\n";
}

json poly_json(const IntPolynomial& p) {
  json arr = json::array();  // lowest degree first, exact strings
  for (int k = 0; k <= p.degree(); ++k) arr.push_back(p[k].get_str());
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Directed-graph diagonalization via edge additions"};
  app.require_subcommand(1);

  std::string input, outdir = ".", format = "auto", mode = "adjacency";
  std::string pre = "destroy-zeros";
  Tolerances tol;
  std::uint64_t seed = kDefaultSeed;
  int max_iter = -1;

  auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("--eps-r", tol.eps_rank, "rank tolerance");
    sub->add_option("--eps-d", tol.eps_angle_deg, "angle tolerance, degrees");
    sub->add_option("--eps-z", tol.eps_zero, "zero-eigenvalue tolerance");
    sub->add_option("--seed", seed, "seed for all randomness");
    sub->add_option("--format", format, "input format: edges, mtx, auto")
        ->check(CLI::IsMember({"edges", "mtx", "auto"}));
    if (with_mode)
      sub->add_option("--mode", mode, "shift: adjacency, laplacian-in, laplacian-out")
          ->check(CLI::IsMember({"adjacency", "laplacian-in", "laplacian-out"}));
  };

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random digraph");
  std::string model = "er";
  int gen_n = 100, gen_k = 10, gen_seed_size = 5, gen_avg_deg = 10, gen_retries = 50;
  double gen_p = 0.02, gen_beta = 0.001, gen_mu = 0.1;
  gen->add_option("--model", model, "er, ws, ba, ke")
      ->check(CLI::IsMember({"er", "ws", "ba", "ke"}));
  gen->add_option("-n,--nodes", gen_n, "node count");
  gen->add_option("--p", gen_p, "ER edge probability");
  gen->add_option("--k", gen_k, "WS ring out-degree (even)");
  gen->add_option("--beta", gen_beta, "WS rewiring probability");
  gen->add_option("--seed-size", gen_seed_size, "BA/KE initial core size");
  gen->add_option("--avg-deg", gen_avg_deg, "BA target average degree (even)");
  gen->add_option("--mu", gen_mu, "KE non-active attachment probability");
  gen->add_option("--retries", gen_retries, "weak-connectivity retries");
  gen->add_option("--seed", seed, "seed");
  gen->add_option("-o,--out", outdir, "output directory");

  // destroy-zeros
  auto* dz = app.add_subcommand("destroy-zeros", "remove all zero eigenvalues");
  dz->add_option("input", input, "input graph file")->required();
  dz->add_option("-o,--out", outdir, "output directory");
  dz->add_option("--max-iter", max_iter, "iteration cap (default n^2)");
  add_common(dz, false);

  // diagonalize
  auto* diag = app.add_subcommand("diagonalize", "destroy all Jordan blocks");
  diag->add_option("input", input, "input graph file")->required();
  diag->add_option("-o,--out", outdir, "output directory");
  diag->add_option("--max-iter", max_iter, "iteration cap (default n^2)");
  diag->add_option("--pre", pre, "pre-phase: destroy-zeros or none")
      ->check(CLI::IsMember({"destroy-zeros", "none"}));
  add_common(diag, true);

  // analyze
  auto* an = app.add_subcommand("analyze", "spectral stability report");
  an->add_option("input", input, "input graph file")->required();
  an->add_option("-o,--out", outdir, "output directory");
  add_common(an, true);

  // gft
  auto* gf = app.add_subcommand("gft", "Fourier basis and spectrum");
  std::string signal_file;
  gf->add_option("input", input, "input graph file")->required();
  gf->add_option("-o,--out", outdir, "output directory");
  gf->add_option("--signal", signal_file, "signal file (one value per line); default constant 1");
  add_common(gf, true);

  // wiener
  auto* wn = app.add_subcommand("wiener", "Wiener denoising experiment");
  int order_min = 1, order_max = 5, trials = 10;
  double sigma = 1.0;
  wn->add_option("input", input, "input graph file")->required();
  wn->add_option("-o,--out", outdir, "output directory");
  wn->add_option("--signal", signal_file, "clean signal file; default seeded random");
  wn->add_option("--order-min", order_min, "smallest filter order");
  wn->add_option("--order-max", order_max, "largest filter order");
  wn->add_option("--sigma", sigma, "noise standard deviation");
  wn->add_option("--trials", trials, "noise realizations per order");
  add_common(wn, true);

  // oracle
  auto* orc = app.add_subcommand("oracle", "exact-arithmetic verification");
  std::string oracle_op = "charpoly", lambda_str = "0";
  orc->add_option("op", oracle_op, "charpoly, coates, minpoly, diagonalizable, jordan")
      ->required()
      ->check(CLI::IsMember({"charpoly", "coates", "minpoly", "diagonalizable", "jordan"}));
  orc->add_option("input", input, "input graph file")->required();
  orc->add_option("--lambda", lambda_str, "rational eigenvalue for `jordan`, e.g. 0 or 3/2");
  add_common(orc, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  json summary;
  try {
    fs::create_directories(outdir);
    const fs::path out(outdir);

    if (*gen) {
      ModelParams mp;
      if (model == "er") mp = ModelParams::erdos_renyi(gen_n, gen_p, seed);
      else if (model == "ws") mp = ModelParams::watts_strogatz(gen_n, gen_k, gen_beta, seed);
      else if (model == "ba") mp = ModelParams::barabasi_albert(gen_n, gen_seed_size, gen_avg_deg, seed);
      else mp = ModelParams::klemm_eguiluz(gen_n, gen_seed_size, gen_mu, seed);
      mp.max_retries = gen_retries;
      Digraph g = generate(mp);
      save_graph(out / "graph.edges", g);
      json params{{"model", model}, {"n", gen_n}, {"seed", seed}};
      if (model == "er") params["p"] = gen_p;
      if (model == "ws") { params["k"] = gen_k; params["beta"] = gen_beta; }
      if (model == "ba") { params["seed_size"] = gen_seed_size; params["avg_deg"] = gen_avg_deg; }
      if (model == "ke") { params["seed_size"] = gen_seed_size; params["mu"] = gen_mu; }
      write_json_file(out / "params.json", params);
      summary = {{"command", "gen"}, {"n", g.num_vertices()}, {"edges", g.num_edges()},
                 {"output", (out / "graph.edges").string()}};
    } else if (*dz) {
      tol.validate();
      Digraph g = load_graph(input, format);
      auto [g2, rep] = destroy_zero_eigenvalues(g, tol, max_iter, seed);
      save_graph(out / "graph.edges", g2);
      write_json_file(out / "report.json", rep.to_json(false));
      summary = rep.to_json(true);
      summary["command"] = "destroy-zeros";
    } else if (*diag) {
      tol.validate();
      ShiftMode sm = parse_mode(mode);
      Digraph g = load_graph(input, format);
      DestroyReport pre_rep;
      if (pre == "destroy-zeros" && !sm.is_laplacian()) {
        auto [g1, rep1] = destroy_zero_eigenvalues(g, tol, max_iter, seed);
        g = g1;
        pre_rep = rep1;
      }
      auto [g2, rep] = destroy_jordan_blocks(g, sm, tol, max_iter, seed);
      // merge the two phases into one report; metrics are the final ones
      DestroyReport total = rep;
      total.choices.insert(total.choices.begin(), pre_rep.choices.begin(),
                           pre_rep.choices.end());
      total.iterations += pre_rep.iterations;
      total.random_fallbacks += pre_rep.random_fallbacks;
      total.runtime_ms += pre_rep.runtime_ms;
      save_graph(out / "graph.edges", g2);
      write_json_file(out / "report.json", total.to_json(false));
      summary = total.to_json(true);
      summary["command"] = "diagonalize";
      summary["mode"] = mode;
    } else if (*an) {
      tol.validate();
      Digraph g = load_graph(input, format);
      fs::path angles = out / "angles.csv";
      summary = analyze_json(g, parse_mode(mode), tol, &angles);
      summary["command"] = "analyze";
      summary["angles_csv"] = angles.string();
    } else if (*gf) {
      tol.validate();
      Digraph g = load_graph(input, format);
      FourierBasis fb = build_fourier(shift_of(g, parse_mode(mode)), tol);
      Eigen::VectorXcd s = Eigen::VectorXcd::Ones(g.num_vertices());
      if (!signal_file.empty()) {
        std::ifstream in(signal_file);
        if (!in) throw std::runtime_error("cannot open signal file: " + signal_file);
        for (int i = 0; i < s.size(); ++i) {
          double x;
          if (!(in >> x)) throw std::runtime_error("signal file too short");
          s(i) = x;
        }
      }
      write_spectrum_csv(out / "spectrum.csv", fb, fb.transform(s));
      write_basis_csv(out / "basis.csv", fb.v);
      summary = {{"command", "gft"}, {"n", fb.size()},
                 {"lambda_max_abs", fb.lambda_max_abs},
                 {"unnormalized_tv", fb.unnormalized_tv},
                 {"spectrum_csv", (out / "spectrum.csv").string()},
                 {"basis_csv", (out / "basis.csv").string()}};
    } else if (*wn) {
      tol.validate();
      Digraph g = load_graph(input, format);
      const int n = g.num_vertices();
      if (order_min < 1 || order_max < order_min || order_max > n)
        throw CLI::ValidationError("--order-min/--order-max out of range");
      FourierBasis fb = build_fourier(shift_of(g, parse_mode(mode)), tol);
      EnergyShift ae = energy_shift(fb);
      Eigen::VectorXd x(n);
      if (!signal_file.empty()) {
        std::ifstream in(signal_file);
        if (!in) throw std::runtime_error("cannot open signal file: " + signal_file);
        for (int i = 0; i < n; ++i)
          if (!(in >> x(i))) throw std::runtime_error("signal file too short");
      } else {
        x = awgn(Eigen::VectorXd::Zero(n), 1.0, seed ^ 0x5f5eULL) * 10.0;
      }
      std::ofstream csv(out / "wiener.csv");
      csv << "order,mean_rel_error,std_rel_error\n";
      json per_order = json::array();
      for (int L = order_min; L <= order_max; ++L) {
        std::vector<double> errs;
        for (int t = 0; t < trials; ++t) {
          Eigen::VectorXd y = awgn(x, sigma, seed + static_cast<std::uint64_t>(t));
          WienerDesign d = wiener_design(x.cast<Complex>(), y.cast<Complex>(), ae, L);
          Eigen::VectorXcd xr = wiener_apply(d, ae, y.cast<Complex>());
          errs.push_back((xr - x.cast<Complex>()).norm() / x.norm());
        }
        double mean = 0;
        for (double e : errs) mean += e;
        mean /= errs.size();
        double var = 0;
        for (double e : errs) var += (e - mean) * (e - mean);
        double sd = errs.size() > 1 ? std::sqrt(var / (errs.size() - 1)) : 0.0;
        csv << L << "," << mean << "," << sd << "\n";
        per_order.push_back({{"order", L}, {"mean_rel_error", mean}, {"std_rel_error", sd}});
      }
      summary = {{"command", "wiener"}, {"sigma", sigma}, {"trials", trials},
                 {"results", per_order}, {"csv", (out / "wiener.csv").string()}};
    } else if (*orc) {
      Digraph g = load_graph(input, format);
      ShiftMode sm = parse_mode(mode);
      RationalMatrix m = sm.is_laplacian() ? rational_laplacian(g, sm.convention)
                                           : rational_adjacency(g);
      summary["command"] = "oracle";
      summary["op"] = oracle_op;
      if (oracle_op == "charpoly") {
        summary["coefficients"] = poly_json(char_poly_exact(m));
      } else if (oracle_op == "coates") {
        summary["coefficients"] = poly_json(char_poly_coates(g));
      } else if (oracle_op == "minpoly") {
        IntPolynomial p = minimal_polynomial(m);
        summary["coefficients"] = poly_json(p);
        summary["squarefree"] = is_squarefree(p);
      } else if (oracle_op == "diagonalizable") {
        summary["diagonalizable"] = is_diagonalizable_exact(m);
      } else {
        summary["lambda"] = lambda_str;
        summary["block_sizes"] = jordan_structure_at(m, Rational(lambda_str));
      }
    }
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const DestroyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    json fail = e.partial_report.to_json(true);
    fail["error"] = e.what();
    std::cout << fail.dump(2) << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    std::cout << json{{"error", e.what()}}.dump(2) << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  std::cout << summary.dump(2) << "\n";
  return 0;
}
