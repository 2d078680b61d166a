// lam3: exact computations with bicomplexes, complexes of zigzag-algebra
// modules, and tricomplexes.  Subcommands decompose a bicomplex into its
// standard summands, tabulate spectral pages and total cohomology, apply
// braid words on either side of the bridge, and run the randomized
// verification suites.  Reports are deterministic for a fixed seed and
// input; timing goes to stderr so stdout stays byte-reproducible.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>

#include <CLI11.hpp>

#include <lam/decompose.hpp>
#include <lam/serialize.hpp>
#include <lam/verify.hpp>

namespace {

using namespace lam;

struct Args {
  std::string field = "p:32003";
  unsigned long long seed = 0;
  int trials = 25;
  std::string window = "-2:2";
  int max_dim = 3;
  int page = 1;
  std::string word;
  std::string in, out, basis, suite;
  std::string side = "tricomplex";
};

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ValidationError("cannot read '" + path + "'");
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("cannot write '" + path + "'");
  os << text;
}

std::pair<int, int> parse_window(const std::string& s) {
  size_t at = s.find(':');
  if (at != std::string::npos) {
    try {
      size_t u1 = 0, u2 = 0;
      int lo = std::stoi(s.substr(0, at), &u1);
      int hi = std::stoi(s.substr(at + 1), &u2);
      if (u1 == at && u2 == s.size() - at - 1 && lo <= hi) return {lo, hi};
    } catch (const std::exception&) {
    }
  }
  throw ValidationError("window: expected lo:hi with lo <= hi, got '" + s + "'");
}

std::string digest_line(const std::string& text) { return hex64(fnv1a64(text)); }

template <class K>
std::vector<std::string> common_header(const std::string& cmd, const FieldOps<K>& ops,
                                       const std::string& input_text,
                                       unsigned long long seed) {
  return {"command " + cmd, "field " + ops.spec.str(),
          "inputs " + (input_text.empty() ? "-" : digest_line(input_text)),
          "seed " + std::to_string(seed)};
}

template <class K>
Report do_decompose(const FieldOps<K>& ops, const Args& a, const std::string& text) {
  Bicomplex<K> b = as_bicomplex(read_module(text, ops));
  Report rep;
  rep.header = common_header("decompose", ops, text, a.seed);
  rep.findings.push_back(detail::checked(0, "decompose", [&](Finding& f) {
    Decomposition<K> dec = decompose(b);  // throws if exact reassembly fails
    for (size_t at = 0; at < dec.summands.size();) {
      size_t to = at;
      while (to < dec.summands.size() && dec.summands[to] == dec.summands[at]) ++to;
      rep.header.push_back("census " + str(dec.summands[at]) + " x" + std::to_string(to - at));
      at = to;
    }
    if (dec.summands.empty()) rep.header.push_back("census empty");
    if (!a.basis.empty()) {
      ModuleFile<K> bf;
      bf.field = ops.spec;
      bf.space = b.space;
      bf.maps.push_back({"cb", dec.change_of_basis});
      std::string btxt = write_module(bf, ops);
      spill(a.basis, btxt);
      rep.header.push_back("basis " + a.basis + " " + digest_line(btxt));
    }
    f.pass = true;
  }));
  return rep;
}

template <class K>
Report do_espage(const FieldOps<K>& ops, const Args& a, const std::string& text) {
  Bicomplex<K> b = as_bicomplex(read_module(text, ops));
  Report rep;
  rep.header = common_header("espage", ops, text, a.seed);
  rep.header.push_back("page " + std::to_string(a.page));
  for (auto& [d, n] : spectral_page(b, a.page))
    rep.header.push_back("dim " + str(d) + " " + std::to_string(n));
  return rep;
}

template <class K>
Report do_tot(const FieldOps<K>& ops, const Args& a, const std::string& text) {
  Bicomplex<K> b = as_bicomplex(read_module(text, ops));
  Report rep;
  rep.header = common_header("tot", ops, text, a.seed);
  for (auto& [k, n] : total_cohomology(b))
    rep.header.push_back("dim " + std::to_string(k) + " " + std::to_string(n));
  return rep;
}

template <class K>
Report do_braid(const FieldOps<K>& ops, const Args& a, const std::string& text) {
  ModuleFile<K> mf = read_module(text, ops);
  BraidWord word = parse_braid_word(a.word);
  Report rep;
  rep.header = common_header("braid", ops, text, a.seed);
  rep.header.push_back("word " + (a.word.empty() ? "-" : a.word));
  rep.header.push_back("side " + a.side);
  auto deliver = [&](Finding& f, const Fingerprint& fp, const std::string& out_text) {
    rep.header.push_back("fingerprint " + fp.str());
    if (!a.out.empty()) {
      spill(a.out, out_text);
      rep.header.push_back("output " + a.out + " " + digest_line(out_text));
    }
    f.pass = true;
  };
  if (a.side == "complex") {
    AComplex<K> c0 = as_acomplex(mf);
    rep.findings.push_back(detail::checked(0, "braid-apply", [&](Finding& f) {
      AComplex<K> c = braid_apply(word, c0);
      deliver(f, fingerprint(c, ops), a.out.empty() ? "" : write_module(to_file(c), ops));
    }));
  } else {
    Tricomplex<K> m0 = as_tricomplex(mf);
    rep.findings.push_back(detail::checked(0, "braid-apply", [&](Finding& f) {
      Tricomplex<K> m = braid_word_apply(word, m0);
      deliver(f, fingerprint(m, ops),
              a.out.empty() ? "" : write_module(to_file(m, ops.spec), ops));
    }));
  }
  return rep;
}

template <class K>
Report do_verify(const FieldOps<K>& ops, const Args& a) {
  auto [lo, hi] = parse_window(a.window);
  VerifyOptions opt;
  opt.trials = a.trials;
  opt.seed = a.seed;
  opt.lo = lo;
  opt.hi = hi;
  opt.max_dim = a.max_dim;
  Report rep;
  rep.header = common_header("verify", ops, "", a.seed);
  rep.header.insert(rep.header.begin() + 1, "suite " + a.suite);
  rep.header.push_back("trials " + std::to_string(a.trials));
  rep.header.push_back("window " + std::to_string(lo) + ":" + std::to_string(hi));
  rep.header.push_back("max-dim " + std::to_string(a.max_dim));
  rep.findings = run_suite(a.suite, ops, opt);
  return rep;
}

template <class F>
int with_ops(const FieldSpec& spec, F&& body) {
  if (spec.rational) {
    FieldOps<Rational> ops{spec};
    return body(ops);
  }
  FieldOps<Fp> ops{spec};
  return body(ops);
}

}  // namespace

int main(int argc, char** argv) {
  auto t0 = std::chrono::steady_clock::now();
  struct Timing {
    std::chrono::steady_clock::time_point t0;
    ~Timing() {
      auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                    std::chrono::steady_clock::now() - t0)
                    .count();
      std::cerr << "elapsed_ms " << ms << "\n";
    }
  } timing{t0};

  Args a;
  CLI::App app{"exact bicomplex, zigzag, and tricomplex computations"};
  app.require_subcommand(1);
  app.add_option("--field", a.field, "scalar field: q or p:<prime>")
      ->capture_default_str();
  app.add_option("--seed", a.seed, "random seed")->capture_default_str();
  app.add_option("--out", a.out, "output path (module file for braid, report copy otherwise)");

  CLI::App* c_dec = app.add_subcommand("decompose", "decompose a bicomplex into summands");
  c_dec->add_option("--in", a.in, "bicomplex module file")->required();
  c_dec->add_option("--basis", a.basis, "write the change of basis to this module file");

  CLI::App* c_esp = app.add_subcommand("espage", "spectral page dimension table");
  c_esp->add_option("--in", a.in, "bicomplex module file")->required();
  c_esp->add_option("--page", a.page, "page number, counted from 1")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  CLI::App* c_tot = app.add_subcommand("tot", "total cohomology dimension table");
  c_tot->add_option("--in", a.in, "bicomplex module file")->required();

  CLI::App* c_brd = app.add_subcommand("braid", "apply a braid word to a module file");
  c_brd->add_option("--in", a.in, "module file")->required();
  c_brd->add_option("--word", a.word, "signed generator indices, e.g. \"0,1,-0\"");
  c_brd->add_option("--side", a.side, "complex or tricomplex")
      ->check(CLI::IsMember({"complex", "tricomplex"}))
      ->capture_default_str();

  CLI::App* c_ver = app.add_subcommand("verify", "run a randomized verification suite");
  c_ver->add_option("--suite", a.suite, "tl, braid, inverse, bridge, or homtable")
      ->required()
      ->check(CLI::IsMember({"tl", "braid", "inverse", "bridge", "homtable"}));
  c_ver->add_option("--trials", a.trials, "number of randomized trials")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  c_ver->add_option("--window", a.window, "support window lo:hi")->capture_default_str();
  c_ver->add_option("--max-dim", a.max_dim, "summand budget per trial")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  // Global flags remain usable after the subcommand name.
  for (CLI::App* s : {c_dec, c_esp, c_tot, c_brd, c_ver}) s->fallthrough();

  try {
    app.parse(argc, argv);
    std::string cmd = c_dec->parsed()   ? "decompose"
                      : c_esp->parsed() ? "espage"
                      : c_tot->parsed() ? "tot"
                      : c_brd->parsed() ? "braid"
                                        : "verify";
    std::string text = cmd == "verify" ? std::string() : slurp(a.in);
    FieldSpec spec = cmd == "verify" ? FieldSpec::parse(a.field) : read_field(text);
    if (cmd != "verify" && app.count("--field") &&
        FieldSpec::parse(a.field).str() != spec.str())
      throw ValidationError("field: flag " + a.field + " does not match the file's " +
                            spec.str());
    return with_ops(spec, [&](const auto& ops) {
      Report rep = cmd == "decompose" ? do_decompose(ops, a, text)
                   : cmd == "espage"  ? do_espage(ops, a, text)
                   : cmd == "tot"     ? do_tot(ops, a, text)
                   : cmd == "braid"   ? do_braid(ops, a, text)
                                      : do_verify(ops, a);
      std::cout << rep.str();
      if (!a.out.empty() && cmd != "braid") spill(a.out, rep.str());
      return rep.ok() ? 0 : 1;
    });
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
