#include "nsolab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>

#include "nsolab/acceptance.hpp"
#include "nsolab/discretization.hpp"
#include "nsolab/error.hpp"
#include "nsolab/export.hpp"
#include "nsolab/mehler.hpp"
#include "nsolab/projectors.hpp"
#include "nsolab/quasimode.hpp"
#include "nsolab/region.hpp"
#include "nsolab/resolvent.hpp"
#include "nsolab/spectral.hpp"

namespace nsolab {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
  std::vector<double> v;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find(',', pos);
    if (end == std::string::npos) end = text.size();
    size_t b = pos, e = end;
    while (b < e && text[b] == ' ') ++b;
    while (e > b && text[e - 1] == ' ') --e;
    double x = 0.0;
    auto res = std::from_chars(text.data() + b, text.data() + e, x);
    if (b == e || res.ec != std::errc() || res.ptr != text.data() + e)
      throw UsageError("cannot parse " + what + " '" + text + "'");
    v.push_back(x);
    pos = end + 1;
  }
  return v;
}

std::vector<double> parse_fixed(const std::string& text, size_t count, const std::string& what) {
  auto v = parse_list(text, what);
  if (v.size() != count) throw UsageError(what + " expects " + std::to_string(count) + " comma-separated numbers");
  return v;
}

cplx parse_complex(const std::string& text, const std::string& what) {
  auto v = parse_fixed(text, 2, what);
  return {v[0], v[1]};
}

std::string complex_text(cplx z) { return format_number(z.real()) + "," + format_number(z.imag()); }

// Writes to --out when given, otherwise to the console stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
      os_ = file_.get();
    }
  }
  std::ostream& operator*() { return *os_; }
  void finish() {
    os_->flush();
    if (!*os_) throw Error("failed to write output");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

struct Common {
  std::string c = "0,1";
  int dim = 128;
  int workers = 1;
  std::uint64_t seed = 20240611;
  std::string out;
};

int env_workers(int fallback) {
  const char* env = std::getenv("NSO_WORKERS");
  if (!env || !*env) return fallback;
  int w = 0;
  auto res = std::from_chars(env, env + std::strlen(env), w);
  if (res.ec != std::errc() || w < 1) throw UsageError("NSO_WORKERS must be a positive integer");
  return w;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerical laboratory for the complex harmonic oscillator -d^2/dx^2 + c x^2", "nso-lab"};
  app.require_subcommand(1);
  app.fallthrough();
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "INI file with [section] blocks per subcommand; flags win");

  Common common;
  app.add_option("--c", common.c, "coupling as re,im")->join(',')->capture_default_str();
  app.add_option("--dim", common.dim, "truncation dimension (power of two, 16..1024)")
      ->capture_default_str()
      ->check([](const std::string& s) -> std::string {
        int n = 0;
        auto r = std::from_chars(s.data(), s.data() + s.size(), n);
        if (r.ec != std::errc() || n < 16 || n > 1024 || (n & (n - 1)) != 0)
          return "dim must be a power of two between 16 and 1024";
        return {};
      });
  app.add_option("--workers", common.workers, "worker threads (NSO_WORKERS overrides)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", common.seed, "random seed")->capture_default_str();
  app.add_option("--out", common.out, "output file (default: standard output)");

  auto* spectrum = app.add_subcommand("spectrum", "exact and truncated eigenvalues");
  int count = 5;
  spectrum->add_option("--count", count)->check(CLI::Range(1, 1000))->capture_default_str();

  auto* numrange = app.add_subcommand("numrange", "classify points against the numerical range");
  std::vector<std::string> points;
  int boundary_samples = 0;
  numrange->add_option("--z", points, "point re,im (repeatable)");
  numrange->add_option("--boundary", boundary_samples, "print this many boundary points")->check(CLI::NonNegativeNumber);

  auto* grid = app.add_subcommand("grid", "resolvent norm grid and optional inclusion certificate");
  std::string rect_text = "0,6,0,6", res_text = "41,41", eps_text, cert_path, region_kind = "sector";
  double delta = 0.5, cert_eps = 0.0;
  int region_m = 0;
  grid->add_option("--rect", rect_text, "re_min,re_max,im_min,im_max")->join(',')->capture_default_str();
  grid->add_option("--res", res_text, "nx,ny")->join(',')->capture_default_str();
  grid->add_option("--eps", eps_text, "contour levels, decreasing")->join(',');
  grid->add_option("--json", cert_path, "also write contour data as JSON to this path");
  std::string certificate_path;
  grid->add_option("--certificate", certificate_path, "write an inclusion certificate JSON to this path");
  grid->add_option("--region", region_kind, "sector | disks")->check(CLI::IsMember({"sector", "disks"}));
  grid->add_option("--delta", delta, "region margin")->check(CLI::PositiveNumber)->capture_default_str();
  grid->add_option("--m", region_m, "eigenvalues enclosed by disks")->check(CLI::NonNegativeNumber);
  grid->add_option("--cert-eps", cert_eps, "certificate epsilon (0: constructive)")->check(CLI::NonNegativeNumber);

  auto* quasi = app.add_subcommand("quasimode", "quasimode norms, residuals and scaling");
  double alpha = 1.0, gamma = 1.0;
  std::string eta_text = "10,100,1000,10000";
  bool fit = false;
  quasi->add_option("--alpha", alpha)->capture_default_str();
  quasi->add_option("--gamma", gamma)->capture_default_str();
  quasi->add_option("--eta", eta_text, "comma-separated eta values")->join(',')->capture_default_str();
  quasi->add_flag("--fit", fit, "also fit the norm scaling exponent");

  auto* mehler = app.add_subcommand("mehler", "heat kernel coefficients and identity checks");
  std::string tau_text = "1,0";
  int nodes = 0, max_n = 5;
  mehler->add_option("--tau", tau_text, "complex time re,im")->join(',')->capture_default_str();
  mehler->add_option("--nodes", nodes, "Nystrom nodes (0: automatic)")->check(CLI::NonNegativeNumber);
  mehler->add_option("--max-n", max_n, "eigenfunctions used in the action check")
      ->check(CLI::Range(0, 40))
      ->capture_default_str();

  auto* proj = app.add_subcommand("projector", "spectral projectors and instability indices");
  int contour_nodes = 64;
  proj->add_option("--max-n", max_n)->check(CLI::Range(0, 60))->capture_default_str();
  proj->add_option("--nodes", contour_nodes, "contour nodes")->check(CLI::Range(8, 4096))->capture_default_str();

  auto* edge = app.add_subcommand("edge", "resolvent along a sector edge, or semigroup decay on it");
  std::string which = "lower", mode = "resolvent";
  double edge_eps = 0.3, eta_max = 40.0, step = 1.0;
  edge->add_option("--edge", which)->check(CLI::IsMember({"lower", "upper"}))->capture_default_str();
  edge->add_option("--mode", mode)->check(CLI::IsMember({"resolvent", "decay"}))->capture_default_str();
  edge->add_option("--eps", edge_eps, "offset into the sector")->capture_default_str();
  edge->add_option("--max", eta_max, "largest eta (or t in decay mode)")->check(CLI::PositiveNumber)->capture_default_str();
  edge->add_option("--step", step)->check(CLI::PositiveNumber)->capture_default_str();

  auto* conj = app.add_subcommand("conjecture", "scan around the conjectured blow-up boundary");
  double p = 0.25;
  conj->add_option("--m", region_m)->check(CLI::NonNegativeNumber)->capture_default_str();
  conj->add_option("--p", p)->capture_default_str();
  conj->add_option("--delta", delta)->check(CLI::PositiveNumber)->capture_default_str();
  conj->add_option("--rect", rect_text)->join(',')->capture_default_str();
  conj->add_option("--res", res_text)->join(',')->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::vector<int> only;
  verify->add_option("--only", only, "criterion ids to run")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Coupling c(parse_complex(common.c, "--c"));
    ResolventOptions ro;
    ro.workers = env_workers(common.workers);
    Sink sink(common.out, out);
    std::ostream& os = *sink;

    if (*spectrum) {
      os << "n,re,im,truncated_re,truncated_im,relgap,reliable\n";
      auto est = eigenvalue_estimates(c, common.dim, count);
      for (int n = 0; n < count; ++n) {
        os << n << ',' << complex_text(eigenvalue(c, n)) << ',' << complex_text(est[n].value) << ','
           << format_number(est[n].diagnostics.rel_gap) << ',' << (est[n].reliable ? 1 : 0) << '\n';
      }
    } else if (*numrange) {
      if (points.empty() && boundary_samples == 0) throw UsageError("numrange needs --z or --boundary");
      if (!points.empty()) {
        os << "re,im,class\n";
        for (const auto& s : points) {
          cplx z = parse_complex(s, "--z");
          os << complex_text(z) << ',' << to_string(numerical_range_membership(c, z)) << '\n';
        }
      }
      if (boundary_samples > 0) {
        os << "t,re,im\n";
        for (int k = 0; k < boundary_samples; ++k) {
          double t = 10.0 * (k + 1) / boundary_samples;
          os << format_number(t) << ',' << complex_text(numerical_range_boundary(c, t)) << '\n';
        }
      }
    } else if (*grid) {
      auto r = parse_fixed(rect_text, 4, "--rect");
      auto res = parse_fixed(res_text, 2, "--res");
      std::vector<double> eps = eps_text.empty() ? std::vector<double>{} : parse_list(eps_text, "--eps");
      if (res[0] != std::floor(res[0]) || res[1] != std::floor(res[1])) throw UsageError("--res must be integers");
      ResolventEngine engine(c, common.dim, ro);
      GridScan g = pseudospectra_grid(engine, {r[0], r[1], r[2], r[3]}, {int(res[0]), int(res[1])}, eps);
      write_grid_csv(os, g);
      if (!cert_path.empty()) {
        Sink js(cert_path, out);
        write_contour_json(*js, g);
        js.finish();
      }
      if (!certificate_path.empty()) {
        InclusionRegion region = region_kind == "sector" ? InclusionRegion::shifted_sector(c, delta)
                                                         : InclusionRegion::sector_plus_disks(c, region_m, delta);
        double e = cert_eps > 0.0 ? cert_eps : constructive_epsilon(g, region);
        Certificate cert = inclusion_certificate(g, region, e);
        Sink js(certificate_path, out);
        write_certificate_json(*js, cert, region);
        js.finish();
        if (!cert.holds) {
          sink.finish();
          err << "certificate violated at " << cert.violations.size() << " nodes\n";
          return 1;
        }
      }
    } else if (*quasi) {
      auto etas = parse_list(eta_text, "--eta");
      if (fit) {
        ScalingFit f = scaling_fit(c, alpha, gamma, etas, {}, ro.workers);
        write_quasimode_csv(os, f.reports);
        err << "norm scaling exponent " << format_number(f.exponent) << " (expected "
            << format_number((gamma - 1.0) / 4.0) << ")\n";
      } else {
        std::vector<QuasimodeReport> reports;
        for (double eta : etas) reports.push_back(quasimode_report(QuasimodeParams::make(c, alpha, gamma, eta)));
        write_quasimode_csv(os, reports);
      }
    } else if (*mehler) {
      cplx tau = parse_complex(tau_text, "--tau");
      MehlerKernel k = kernel_coefficients(c, tau);
      os << "key,value\n";
      os << "lambda," << complex_text(k.lambda) << '\n';
      os << "w1," << complex_text(k.w1) << "\nw2," << complex_text(k.w2) << "\nw3," << complex_text(k.w3) << '\n';
      os << "in_sector," << k.in_sector << "\nsigns_ok," << k.signs_ok << "\nvalid," << k.valid << '\n';
      if (!k.valid) {
        sink.finish();
        err << "kernel is not valid for this tau\n";
        return 1;
      }
      os << "hs_closed_form," << format_number(hs_norm(k, HsMethod::closed_form)) << '\n';
      os << "hs_quadrature," << format_number(hs_norm(k, HsMethod::quadrature)) << '\n';
      double l = nystrom_half_width(k);
      int nn = nodes > 0 ? nodes : recommended_node_count(l);
      os << "nystrom_nodes," << nn << "\nnystrom_norm," << format_number(nystrom_norm(nystrom_build(k, nn, l)))
         << '\n';
      double act = 0.0;
      for (int n = 0; n <= max_n; ++n) act = std::max(act, semigroup_action_check(k, n, nodes));
      os << "action_error," << format_number(act) << '\n';
      os << "law_error," << format_number(semigroup_law_check(c, tau, tau, nodes)) << '\n';
    } else if (*proj) {
      write_index_csv(os, instability_table(c, max_n, common.dim, contour_nodes));
    } else if (*edge) {
      std::vector<double> grid_pts;
      double start = mode == "decay" ? step : 0.0;
      for (int k = 0; start + k * step <= eta_max * (1 + 1e-12); ++k) grid_pts.push_back(start + k * step);
      Sector s = maximal_sector(c);
      if (mode == "decay") {
        double angle = which == "lower" ? s.lower : s.upper;
        ScanResult r = edge_decay_scan(c, angle, grid_pts, 0, ro.workers);
        write_decay_csv(os, r);
        err << "fitted exponent " << format_number(r.get("fitted_exponent")) << ", predicted "
            << format_number(r.get("predicted_rate")) << '\n';
      } else {
        ScanResult r = edge_scan(c, which == "lower" ? Edge::lower : Edge::upper, grid_pts, edge_eps, common.dim, ro);
        write_scan_csv(os, r);
        err << "supremum " << format_number(r.get("supremum")) << " at eta " << format_number(r.get("argsup"))
            << '\n';
      }
    } else if (*conj) {
      ConjectureGridSpec spec;
      auto r = parse_fixed(rect_text, 4, "--rect");
      auto res = parse_fixed(res_text, 2, "--res");
      spec.rect = {r[0], r[1], r[2], r[3]};
      spec.res = {int(res[0]), int(res[1])};
      ScanResult sr = conjecture_scan(c, region_m, p, delta, spec, common.dim, ro);
      write_scan_csv(os, sr);
      err << "b " << format_number(sr.get("b")) << ", E " << format_number(sr.get("E")) << '\n';
    } else if (*verify) {
      AcceptanceOptions opt;
      opt.seed = common.seed;
      opt.workers = ro.workers;
      opt.only = only;
      bool all = true;
      run_acceptance(opt, [&](const CriterionResult& r) {
        os << format_result_line(r) << '\n' << std::flush;
        all = all && r.passed;
      });
      sink.finish();
      return all ? 0 : 1;
    }
    sink.finish();
    return 0;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace nsolab
