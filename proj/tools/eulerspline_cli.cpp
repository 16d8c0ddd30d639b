// Command-line front end: eulerian, kernel, smooth, discretize, norms,
// distance, rates, serve. Exit codes: 0 ok, 1 usage, 2 precondition.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerspline/api.hpp"
#include "eulerspline/server.hpp"

namespace {

using eulerspline::io::json;
namespace es = eulerspline;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw es::UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json(const std::string& path) { return es::io::parse(read_file(path), path); }

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw es::UsageError("cannot write '" + path + "'");
  out << text;
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

std::vector<double> parse_alpha(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw es::UsageError("malformed --alpha entry '" + item + "'");
    }
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Eulerian smoothing splines, discretizations and Sobolev-ball rates"};
  app.require_subcommand(1);
  std::string inner = "euclidean";
  app.add_option("--inner", inner, "vector norm: euclidean, l1 or linf");

  int m = 0;
  auto* eulerian = app.add_subcommand("eulerian", "Eulerian triangle row m as JSON");
  eulerian->add_option("--m", m, "row index")->required();

  std::string compose;
  auto* kernel = app.add_subcommand("kernel", "exact coefficients of the smoothing kernel C^m");
  kernel->add_option("--m", m, "degree")->required();
  kernel->add_option("--compose", compose, "compose with the shift (only 'sigma')")->check(CLI::IsMember({"sigma"}));

  std::string in_path, out_path, alpha_str;
  int samples = es::api::kDefaultSamples;
  bool no_shift = false;
  double q = 2.0;
  auto* smooth = app.add_subcommand("smooth", "smoothing spline of a points file");
  smooth->add_option("--in", in_path, "points JSON")->required();
  smooth->add_option("--m", m, "degree")->required();
  smooth->add_option("--samples", samples, "sample count of the output curve");
  smooth->add_option("--out", out_path, "write the sampled curve as CSV here");
  smooth->add_flag("--no-shift", no_shift, "build f_p instead of f_{sigma_m * p}");
  smooth->add_option("--q", q, "exponent of the reported norms");
  smooth->add_option("--alpha", alpha_str, "radii a0,..,am for membership");

  std::string curve_path, kind = "s0";
  int n = 0;
  auto* discretize = app.add_subcommand("discretize", "sample a curve (or take points) and build s0/s1");
  auto* curve_opt = discretize->add_option("--curve", curve_path, "curve spec JSON");
  discretize->add_option("--in", in_path, "points JSON instead of a curve")->excludes(curve_opt);
  discretize->add_option("--n", n, "number of samples (with --curve)");
  discretize->add_option("--kind", kind, "s0 or s1")->check(CLI::IsMember({"s0", "s1"}));
  discretize->add_option("--samples", samples, "sample count of the output curve");

  auto* norms = app.add_subcommand("norms", "discrete Sobolev semi-norms of a points file");
  norms->add_option("--in", in_path, "points JSON")->required();
  norms->add_option("--m", m, "highest order")->required();
  norms->add_option("--q", q, "exponent")->required();
  norms->add_option("--alpha", alpha_str, "radii a0,..,am");

  std::string a_path, b_path;
  double tol = es::kDefaultDistanceTol;
  auto* distance = app.add_subcommand("distance", "d(f, g) between two curves or splines");
  distance->add_option("--a", a_path, "first curve")->required();
  distance->add_option("--b", b_path, "second curve")->required();
  distance->add_option("--tol", tol, "quadrature tolerance");

  std::string spec_path, direction = "fwd", grid = "16:1024", format = "csv";
  std::uint64_t seed = es::api::kDefaultSeed;
  auto* rates = app.add_subcommand("rates", "distance rates over an n-grid with a log-log fit");
  rates->add_option("--spec", spec_path, "JSON with 'ball' and, for fwd, 'curve'")->required();
  rates->add_option("--direction", direction, "fwd or bwd")->check(CLI::IsMember({"fwd", "bwd"}));
  rates->add_option("--kind", kind, "s0 or s1")->check(CLI::IsMember({"s0", "s1"}));
  rates->add_option("--grid", grid, "lo:hi (dyadic) or a comma list");
  rates->add_option("--seed", seed, "generator seed (bwd)");
  rates->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  rates->add_option("--out", out_path, "write the report here instead of stdout");

  int port = es::server::default_port();
  std::string host = "127.0.0.1";
  auto* serve = app.add_subcommand("serve", "HTTP facade on localhost");
  serve->add_option("--port", port, "port (default from EULERSPLINE_PORT or 8731)");
  serve->add_option("--host", host, "bind address");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    const auto inner_norm = es::parse_vector_norm(inner);
    if (*eulerian) {
      emit(es::io::eulerian_json(m));
    } else if (*kernel) {
      emit(es::api::kernel(m, compose == "sigma"));
    } else if (*smooth) {
      json body = {{"points", read_json(in_path)}, {"m", m}, {"samples", samples}, {"shift", !no_shift},
                   {"q", q},   {"inner", inner}};
      if (!alpha_str.empty()) body["alpha"] = parse_alpha(alpha_str);
      json res = es::api::smooth(body);
      if (!out_path.empty()) {
        write_file(out_path, es::io::rows_to_csv(res["curve"]));
        res.erase("curve");
      }
      emit(res);
    } else if (*discretize) {
      if (!curve_path.empty()) {
        if (n < 1) throw es::UsageError("--n is required with --curve");
        auto doc = read_json(curve_path);
        if (doc.contains("curve")) doc = doc["curve"];
        emit(es::api::discretize({{"curve", doc}, {"n", n}, {"kind", kind}, {"samples", samples}}));
      } else if (!in_path.empty()) {
        const auto p = es::io::points_from_json(read_json(in_path));
        const auto s = es::discretize(p, es::parse_spline_kind(kind));
        emit({{"points", es::io::to_json(p)}, {"spline", es::io::to_json(s)},
              {"curve", es::io::sample_rows(s, samples)}});
      } else {
        throw es::UsageError("discretize needs --curve or --in");
      }
    } else if (*norms) {
      json body = {{"points", read_json(in_path)}, {"m", m}, {"q", q}, {"inner", inner}};
      if (!alpha_str.empty()) body["alpha"] = parse_alpha(alpha_str);
      emit(es::api::norms(body));
    } else if (*distance) {
      emit(es::api::distance(read_json(a_path), read_json(b_path), tol, inner_norm));
    } else if (*rates) {
      json body = read_json(spec_path);
      if (!body.is_object()) throw es::UsageError("spec file must hold a JSON object");
      body["direction"] = direction;
      body["kind"] = kind;
      body["grid"] = grid;
      body["seed"] = seed;
      body["inner"] = inner;
      const auto rep = es::api::rates_report(body, [](int nn, double d) {
        std::cerr << "n=" << nn << " distance=" << d << std::endl;
      });
      const std::string text = format == "csv" ? es::io::to_csv(rep) : es::io::to_json(rep).dump() + "\n";
      if (out_path.empty())
        std::cout << text;
      else
        write_file(out_path, text);
    } else if (*serve) {
      auto srv = es::server::make_server();
      std::cerr << "listening on http://" << host << ':' << port << std::endl;
      if (!srv->listen(host, port)) throw es::UsageError("cannot bind " + host + ":" + std::to_string(port));
    }
  } catch (const es::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const es::DomainError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  } catch (const es::NonFiniteError& e) {
    std::cerr << "precondition violated: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
