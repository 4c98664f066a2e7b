// matnum: turn a non-singular integer matrix into a working positional
// numeration system.  Subcommands: analyze, synthesize, encode, decode,
// decide, verify.  Every command prints a human-readable report and can
// drop a machine-readable JSON side file via --json.

#include "matnum/decider.hpp"
#include "matnum/encoder.hpp"
#include "matnum/json_io.hpp"
#include "matnum/oracle.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

using namespace matnum;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumericPlan = 3;
constexpr int kExitBudget = 4;
constexpr int kExitMismatch = 5;

IntMatrix load_matrix(const std::string& source) {
  if (source.empty()) throw InputError("missing --matrix");
  if (source[0] == '[') {
    try {
      return matrix_from_json(Json::parse(source));
    } catch (const Json::parse_error& e) {
      throw InputError(std::string("bad matrix literal: ") + e.what());
    }
  }
  Json j = read_json_file(source);
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j["matrix"]);
  return matrix_from_json(j);
}

ScaledVector load_vector(const std::string& text, int denominator_exp, int dim) {
  if (text.empty()) throw InputError("missing --vector");
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string("bad vector literal: ") + e.what());
  }
  ScaledVector v;
  v.num = vecz_from_json(j);
  v.k = denominator_exp;
  if (static_cast<int>(v.num.size()) != dim) {
    throw InputError("vector length does not match the matrix dimension");
  }
  if (v.k < 0) throw InputError("--denominator-exp must be non-negative");
  return v;
}

void emit_json(const std::string& path, const Json& j) {
  if (!path.empty()) write_json_file(path, j);
}

struct CommonArgs {
  std::string matrix;
  std::string json_path;
  std::string out_path;
  unsigned long seed = 12345;
};

std::string fmt_lambda(const std::complex<double>& l) {
  std::ostringstream os;
  os << l.real();
  if (l.imag() > 0) os << "+" << l.imag() << "i";
  if (l.imag() < 0) os << "-" << -l.imag() << "i";
  return os.str();
}

int run_analyze(const CommonArgs& args) {
  IntMatrix m = load_matrix(args.matrix);
  Int delta = m.det();
  if (delta == 0) {
    std::cerr << "error: matrix is singular\n";
    return kExitInput;
  }
  IntPolynomial p = char_poly(m);
  SpectralSplit split = classify(p);
  JordanPlan plan = scale_lattice(real_jordan(m, split), args.seed);
  EqualityVerdict verdict = decide_equality(m);

  std::cout << "matrix: " << to_json(m).dump() << "\n";
  std::cout << "Delta = " << delta << "\n";
  std::cout << "char poly: " << p.pretty() << "\n";
  std::cout << "spectral dims (V_e, V_u, V_c) = (" << split.dims[0] << ", " << split.dims[1]
            << ", " << split.dims[2] << ")\n";
  for (const RootEntry& e : split.expanding) {
    std::cout << "  expanding   lambda ~ " << fmt_lambda(e.lambda) << "  (mult "
              << e.multiplicity << ")\n";
  }
  for (const RootEntry& e : split.unimodular) {
    std::cout << "  unimodular  lambda ~ " << fmt_lambda(e.lambda) << "  angle " << e.angle
              << "  (mult " << e.multiplicity << ")\n";
  }
  for (const RootEntry& e : split.contracting) {
    std::cout << "  contracting lambda ~ " << fmt_lambda(e.lambda) << "  (mult "
              << e.multiplicity << ")\n";
  }
  std::cout << "jordan residual = " << plan.residual << " (alpha = " << plan.alpha << ")\n";
  if (verdict.equal()) {
    std::cout << "verdict: Equal (ell = " << verdict.ell << ")\n";
  } else {
    std::cout << "verdict: ProperSubset (witness prime " << verdict.bad_prime << ")\n";
  }

  Json j;
  j["matrix"] = to_json(m);
  j["delta"] = to_json(delta);
  j["char_poly"] = to_json(IntPolynomial(p).coeffs.empty() ? VecZ{} : p.coeffs);
  j["dims"] = Json::array({split.dims[0], split.dims[1], split.dims[2]});
  j["residual"] = plan.residual;
  j["verdict"] = verdict_to_json(verdict);
  emit_json(args.json_path, j);
  return kExitOk;
}

int run_synthesize(const CommonArgs& args) {
  IntMatrix m = load_matrix(args.matrix);
  if (m.det() == 0) {
    std::cerr << "error: matrix is singular\n";
    return kExitInput;
  }
  SynthesizeOptions opts;
  opts.seed = args.seed;
  NumerationSystem sys = synthesize(m, opts);
  std::string out = args.out_path.empty() ? "alphabet.json" : args.out_path;
  write_json_file(out, digitset_to_json(sys.alphabet, system_provenance(sys)));
  std::cout << "alphabet: " << sys.alphabet.size() << " digits (C = " << sys.C
            << ", jordan digits = " << sys.d_tilde.size() << ")\n";
  std::cout << "written: " << out << "\n";
  emit_json(args.json_path, system_provenance(sys));
  return kExitOk;
}

int run_decide(const CommonArgs& args) {
  IntMatrix m = load_matrix(args.matrix);
  if (m.det() == 0) {
    std::cerr << "error: matrix is singular\n";
    return kExitInput;
  }
  EqualityVerdict v = decide_equality(m);
  if (v.equal()) {
    std::cout << "Equal: Fin_D(M) = U_k Delta^-k Z^m  (witness ell = " << v.ell << ")\n";
    std::cout << "re-verify: M^" << v.ell << " mod |Delta| = 0\n";
  } else {
    std::cout << "ProperSubset: no power of M vanishes mod Delta\n";
    std::cout << "witness prime p = " << v.bad_prime << ", M^m mod p = "
              << to_json(v.residue_power).dump() << "\n";
  }
  emit_json(args.json_path, verdict_to_json(v));
  return kExitOk;
}

int run_encode(const CommonArgs& args, const std::string& vector_text, int denominator_exp,
               const std::string& alphabet_source, const std::string& strategy_name, int window,
               int max_terms) {
  IntMatrix m = load_matrix(args.matrix);
  if (m.det() == 0) {
    std::cerr << "error: matrix is singular\n";
    return kExitInput;
  }
  ScaledVector z = load_vector(vector_text, denominator_exp, m.dim());

  EncodeOptions opts;
  if (strategy_name == "constructive") {
    opts.strategy = Strategy::Constructive;
  } else if (strategy_name == "search") {
    opts.strategy = Strategy::Search;
  } else {
    opts.strategy = Strategy::Auto;
  }
  opts.budget.k_lo = -window;
  opts.budget.k_hi = window;
  opts.budget.max_terms = max_terms;

  EncodeResult result;
  DigitSet alphabet;
  if (alphabet_source.empty() || alphabet_source == "synthesize") {
    SynthesizeOptions sopts;
    sopts.seed = args.seed;
    NumerationSystem sys = synthesize(m, sopts);
    alphabet = sys.alphabet;
    result = encode(sys, z, opts);
  } else {
    alphabet = digitset_from_json(read_json_file(alphabet_source));
    if (alphabet.dim != m.dim()) {
      throw InputError("alphabet dimension does not match the matrix");
    }
    result = encode_search(m, z, alphabet, opts.budget);
  }

  switch (result.outcome) {
    case EncodeOutcome::Found: {
      std::string out = args.out_path.empty() ? "representation.json" : args.out_path;
      write_json_file(out, representation_to_json(m, result.rep, alphabet));
      std::cout << "encoded " << sv_to_string(z) << ": " << result.rep.terms.size()
                << " terms";
      if (result.trace.strategy == Strategy::Constructive) {
        std::cout << " (constructive, j = " << result.trace.j
                  << ", N = " << result.trace.iterations << ")";
      } else {
        std::cout << " (search, nodes = " << result.trace.nodes_visited << ")";
      }
      std::cout << "\nwritten: " << out << "\n";
      Json j;
      j["representation"] = representation_to_json(m, result.rep, alphabet);
      j["trace"] = Json{{"strategy",
                         result.trace.strategy == Strategy::Constructive ? "constructive" : "search"},
                        {"j", result.trace.j},
                        {"iterations", result.trace.iterations},
                        {"nodes", result.trace.nodes_visited}};
      emit_json(args.json_path, j);
      return kExitOk;
    }
    case EncodeOutcome::NotRepresentable: {
      std::cout << "not representable: the residue orbit of the denominator cycles without "
                   "reaching zero\n";
      if (result.witness) {
        std::cout << "witness: cycle of length " << result.witness->cycle_length
                  << " entered after " << result.witness->prefix_length << " steps, modulus "
                  << result.witness->modulus << "\n";
      }
      Json j;
      j["outcome"] = "not-representable";
      if (result.witness) {
        j["witness"] = Json{{"prefix_length", result.witness->prefix_length},
                            {"cycle_length", result.witness->cycle_length},
                            {"entry_state", to_json(result.witness->entry_state)},
                            {"modulus", to_json(result.witness->modulus)}};
      }
      emit_json(args.json_path, j);
      return kExitOk;
    }
    case EncodeOutcome::NotFound:
      std::cerr << "not found within the search budget (window " << window << ", max terms "
                << max_terms << ")\n";
      emit_json(args.json_path, Json{{"outcome", "not-found"}});
      return kExitBudget;
  }
  return kExitBudget;
}

int run_decode(const CommonArgs& args, const std::string& rep_path) {
  if (rep_path.empty()) throw InputError("missing --rep");
  RepresentationFile f = representation_from_json(read_json_file(rep_path));
  ScaledVector v = decode(f.matrix, f.rep, f.alphabet);
  std::cout << "value: " << sv_to_string(v);
  if (v.k > 0) std::cout << "  (Delta = " << f.matrix.det() << ")";
  std::cout << "\n";
  Json j;
  j["value"] = to_json(v);
  j["delta"] = to_json(f.matrix.det());
  emit_json(args.json_path, j);
  return kExitOk;
}

int run_verify(const CommonArgs& args, const std::string& rep_path,
               const std::string& vector_text, int denominator_exp) {
  if (rep_path.empty()) throw InputError("missing --rep");
  RepresentationFile f = representation_from_json(read_json_file(rep_path));
  ScaledVector target = load_vector(vector_text, denominator_exp, f.matrix.dim());
  ScaledVector value = decode(f.matrix, f.rep, f.alphabet);
  ScaledVector normalized = normalize(target, f.matrix.det());
  bool ok = value == normalized;
  std::cout << "decoded: " << sv_to_string(value) << "\n";
  std::cout << "target:  " << sv_to_string(normalized) << "\n";
  std::cout << (ok ? "MATCH" : "MISMATCH") << "\n";
  Json j;
  j["decoded"] = to_json(value);
  j["target"] = to_json(normalized);
  j["match"] = ok;
  emit_json(args.json_path, j);
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"matnum: matrix numeration systems"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string vector_text, alphabet_source, strategy = "auto", rep_path;
  int denominator_exp = 0, window = 8, max_terms = 8;

  auto add_common = [&](CLI::App* cmd, bool with_matrix = true) {
    if (with_matrix) cmd->add_option("--matrix", args.matrix, "matrix literal or JSON file");
    cmd->add_option("--json", args.json_path, "write a machine-readable JSON report here");
    cmd->add_option("--out", args.out_path, "output file");
    cmd->add_option("--seed", args.seed, "seed for randomized certificates");
  };

  CLI::App* analyze = app.add_subcommand("analyze", "determinant, spectrum, plan, verdict");
  add_common(analyze);

  CLI::App* synthesize_cmd = app.add_subcommand("synthesize", "synthesize a digit alphabet");
  add_common(synthesize_cmd);

  CLI::App* encode_cmd = app.add_subcommand("encode", "encode a vector as digit string");
  add_common(encode_cmd);
  encode_cmd->add_option("--vector", vector_text, "integer vector literal");
  encode_cmd->add_option("--denominator-exp", denominator_exp, "k for value = num / Delta^k");
  encode_cmd->add_option("--alphabet", alphabet_source, "'synthesize' (default) or digit set file");
  encode_cmd->add_option("--strategy", strategy, "auto | constructive | search");
  encode_cmd->add_option("--window", window, "search window half-width");
  encode_cmd->add_option("--max-terms", max_terms, "search term budget");

  CLI::App* decode_cmd = app.add_subcommand("decode", "decode a representation file");
  add_common(decode_cmd, false);
  decode_cmd->add_option("--rep", rep_path, "representation file")->required();

  CLI::App* decide_cmd = app.add_subcommand("decide", "equality verdict with witness");
  add_common(decide_cmd);

  CLI::App* verify_cmd = app.add_subcommand("verify", "replay a representation against a target");
  add_common(verify_cmd, false);
  verify_cmd->add_option("--rep", rep_path, "representation file")->required();
  verify_cmd->add_option("--vector", vector_text, "target vector literal");
  verify_cmd->add_option("--denominator-exp", denominator_exp, "target denominator exponent");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return run_analyze(args);
    if (synthesize_cmd->parsed()) return run_synthesize(args);
    if (encode_cmd->parsed())
      return run_encode(args, vector_text, denominator_exp, alphabet_source, strategy, window,
                        max_terms);
    if (decode_cmd->parsed()) return run_decode(args, rep_path);
    if (decide_cmd->parsed()) return run_decide(args);
    if (verify_cmd->parsed()) return run_verify(args, rep_path, vector_text, denominator_exp);
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const SingularMatrixError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ClassificationBudgetExceeded& e) {
    std::cerr << "numeric plan error: " << e.what() << "\n";
    return kExitNumericPlan;
  } catch (const JordanUnstable& e) {
    std::cerr << "numeric plan error: " << e.what() << "\n";
    return kExitNumericPlan;
  } catch (const CloseLatticeViolation& e) {
    std::cerr << "numeric plan error: " << e.what() << "\n";
    return kExitNumericPlan;
  } catch (const EncodeBudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const EnumerationCapExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const FactorizationLimitExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitInput;
}
