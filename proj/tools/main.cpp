// twistconv: invert twisted convolution, finite Z_p x Z_p systems, and Gabor
// frame operators from the command line. Exit codes: 0 success, 2 not
// invertible / not a frame / verification failed, 3 truncation did not
// converge, 4 malformed input, 1 unexpected error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twistconv/conv_inverse.hpp"
#include "twistconv/errors.hpp"
#include "twistconv/finite_twisted.hpp"
#include "twistconv/gabor.hpp"
#include "twistconv/json_io.hpp"
#include "twistconv/sequence.hpp"
#include "twistconv/twisted_inverse.hpp"

namespace {

struct Options {
  std::string input;
  std::string output;
  std::string second;
  int p = 0;
  int q = 0;
  double tol = 1e-8;
  std::int64_t fft_size = 256;
  double symbol_floor = 1e-8;
  double tail_tol = 1e-12;
  int max_refine = 4;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot read input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const Options& opt, const std::string& text) {
  if (opt.output.empty()) {
    std::cout << text << '\n';
    return;
  }
  std::ofstream out(opt.output, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot write output file: " + opt.output);
  out << text << '\n';
}

twistconv::InversionConfig inversion_config(const Options& opt) {
  twistconv::InversionConfig cfg;
  cfg.grid_size = opt.fft_size;
  cfg.symbol_floor = opt.symbol_floor;
  cfg.tail_tol = opt.tail_tol;
  cfg.residual_tol = opt.tol;
  cfg.max_refine = opt.max_refine;
  return cfg;
}

void add_inversion_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--tol", opt.tol, "Residual tolerance")->capture_default_str();
  cmd->add_option("--fft-size", opt.fft_size, "FFT grid points per axis")->capture_default_str();
  cmd->add_option("--symbol-floor", opt.symbol_floor, "Minimum admissible symbol modulus")
      ->capture_default_str();
  cmd->add_option("--tail-tol", opt.tail_tol, "Truncation tail tolerance")->capture_default_str();
  cmd->add_option("--max-refine", opt.max_refine, "Maximum grid doublings")->capture_default_str();
}

int run_invert(const Options& opt) {
  const twistconv::Sequence a = twistconv::json::parse_sequence(read_file(opt.input));
  const twistconv::TwistParams tp(opt.p, opt.q, a.dim());
  const twistconv::InversionReport report =
      twistconv::invert_twisted(a, tp, inversion_config(opt));
  emit(opt, twistconv::json::write_inversion_report(report));
  return 0;
}

int run_finite_invert(const Options& opt, bool q_overridden) {
  const twistconv::json::ParsedFiniteGrid parsed =
      twistconv::json::parse_finite_grid(read_file(opt.input));
  const int q = q_overridden ? opt.q : parsed.q;
  const twistconv::FiniteGrid h = twistconv::invert_block_circulant(parsed.grid, q);
  const twistconv::FiniteGrid delta = twistconv::finite_delta(parsed.grid.p());
  double residual = 0.0;
  const twistconv::FiniteGrid gh = twistconv::finite_twisted_convolve(parsed.grid, h, q);
  const twistconv::FiniteGrid hg = twistconv::finite_twisted_convolve(h, parsed.grid, q);
  for (int j = 0; j < parsed.grid.p(); ++j) {
    for (int k = 0; k < parsed.grid.p(); ++k) {
      residual = std::max(residual, std::abs(gh.at(j, k) - delta.at(j, k)));
      residual = std::max(residual, std::abs(hg.at(j, k) - delta.at(j, k)));
    }
  }
  if (residual > opt.tol) {
    char msg[96];
    std::snprintf(msg, sizeof msg, "finite-invert: residual %g exceeds tolerance %g", residual,
                  opt.tol);
    throw twistconv::TruncationNotConvergedError(msg);
  }
  emit(opt, twistconv::json::write_finite_grid(h, q));
  return 0;
}

int run_dual_window(const Options& opt) {
  const twistconv::GaborConfig cfg = twistconv::json::parse_gabor_config(read_file(opt.input));
  const twistconv::DualWindowResult res = twistconv::dual_window(cfg, inversion_config(opt));
  emit(opt, twistconv::json::write_dual_window(res));
  return 0;
}

int run_verify(const Options& opt, bool p_set, bool q_set) {
  const twistconv::Sequence a = twistconv::json::parse_sequence(read_file(opt.input));
  const twistconv::json::ParsedSecond second =
      twistconv::json::parse_sequence_or_report(read_file(opt.second));
  int p = opt.p;
  int q = opt.q;
  if (!p_set || !q_set) {
    if (!second.from_report) {
      throw std::invalid_argument("verify: --p and --q are required unless --second is a report");
    }
    if (!p_set) p = second.p;
    if (!q_set) q = second.q;
  }
  const twistconv::TwistParams tp(p, q, a.dim());
  const auto [right, left] = twistconv::verify_inverse(a, second.seq, tp);
  emit(opt, twistconv::json::write_residual_pair(right, left));
  if (right > opt.tol || left > opt.tol) {
    std::cerr << "verify: residuals exceed tolerance " << opt.tol << "\n";
    return 2;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constructive inversion of twisted convolution"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* invert = app.add_subcommand("invert", "Invert a sequence in the twisted algebra");
  invert->add_option("--input", opt.input, "Sequence JSON file")->required();
  invert->add_option("--output", opt.output, "Output path (default stdout)");
  invert->add_option("--p", opt.p, "Twist denominator p")->required();
  invert->add_option("--q", opt.q, "Twist numerator q")->required();
  add_inversion_flags(invert, opt);

  CLI::App* finite = app.add_subcommand("finite-invert", "Invert a finite Z_p x Z_p system");
  finite->add_option("--input", opt.input, "FiniteGrid JSON file")->required();
  finite->add_option("--output", opt.output, "Output path (default stdout)");
  CLI::Option* finite_q = finite->add_option("--q", opt.q, "Override the q stored in the input");
  finite->add_option("--tol", opt.tol, "Residual tolerance")->capture_default_str();

  CLI::App* dual = app.add_subcommand("dual-window", "Compute a canonical dual Gabor window");
  dual->add_option("--input", opt.input, "GaborConfig JSON file")->required();
  dual->add_option("--output", opt.output, "Output path (default stdout)");
  add_inversion_flags(dual, opt);

  CLI::App* verify = app.add_subcommand("verify", "Check that two sequences are twisted inverses");
  verify->add_option("--input", opt.input, "Sequence JSON file (a)")->required();
  verify->add_option("--second", opt.second, "Sequence or report JSON file (b)")->required();
  verify->add_option("--output", opt.output, "Output path (default stdout)");
  CLI::Option* verify_p = verify->add_option("--p", opt.p, "Twist denominator p");
  CLI::Option* verify_q = verify->add_option("--q", opt.q, "Twist numerator q");
  verify->add_option("--tol", opt.tol, "Residual tolerance")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 4;
  }

  try {
    if (invert->parsed()) return run_invert(opt);
    if (finite->parsed()) return run_finite_invert(opt, finite_q->count() > 0);
    if (dual->parsed()) return run_dual_window(opt);
    return run_verify(opt, verify_p->count() > 0, verify_q->count() > 0);
  } catch (const twistconv::NotInvertibleError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const twistconv::NotAFrameError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const twistconv::NotContractiveError& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const twistconv::TruncationNotConvergedError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const twistconv::MaxIterExceededError& e) {
    std::cerr << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const std::out_of_range& e) {
    std::cerr << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "unexpected error: " << e.what() << '\n';
    return 1;
  }
}
