// ctalg: command-line front end for the constant term algebra library.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ctalg/ctalg.hpp"

namespace {

using namespace ctalg;

enum class Format { Text, Json };

struct Common {
  std::string format = "text";
  unsigned threads = 0;

  Format fmt() const { return format == "json" ? Format::Json : Format::Text; }
};

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::stringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TypeARational load_function(const std::string& input, const std::string& expr) {
  if (!input.empty() && !expr.empty()) throw Error(ErrorKind::InvalidArgument, "give either --input or --expr");
  if (!expr.empty()) return parse_typea(expr);
  if (input.empty()) throw Error(ErrorKind::InvalidArgument, "missing --input or --expr");
  return parse_typea(read_input(input));
}

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw Error(ErrorKind::Parse, std::string("bad integer in ") + what + ": '" + item + "'");
    }
    if (used != item.size()) throw Error(ErrorKind::Parse, std::string("bad integer in ") + what + ": '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw Error(ErrorKind::Parse, std::string("empty ") + what);
  return out;
}

/// "0..9", "1,4,7" or a single value.
std::vector<long> parse_t_values(const std::string& text) {
  if (auto dots = text.find(".."); dots != std::string::npos) {
    const auto lo = parse_int_list(text.substr(0, dots), "--t");
    const auto hi = parse_int_list(text.substr(dots + 2), "--t");
    if (lo.size() != 1 || hi.size() != 1 || hi[0] < lo[0]) throw Error(ErrorKind::Parse, "bad range " + text);
    std::vector<long> out;
    for (long t = lo[0]; t <= hi[0]; ++t) out.push_back(t);
    return out;
  }
  std::vector<long> out;
  for (int v : parse_int_list(text, "--t")) out.push_back(v);
  return out;
}

ForestKind parse_class(const std::string& c) {
  if (c == "inc") return ForestKind::Increasing;
  if (c == "ninc") return ForestKind::NearlyIncreasing;
  if (c == "aug-inc") return ForestKind::AugmentedIncreasing;
  if (c == "aug-ninc") return ForestKind::AugmentedNearlyIncreasing;
  if (c == "any") return ForestKind::Any;
  throw Error(ErrorKind::Parse, "unknown class " + c);
}

void emit(const Common& opt, const Json& j, const std::string& text) {
  if (opt.fmt() == Format::Json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text << "\n";
  }
}

std::string sign_text(int s) { return s > 0 ? "+1" : "-1"; }

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::Parse:
    case ErrorKind::ComplexConstant:
      return 2;
    default:
      return 1;
  }
}

void diagnose(const std::string& kind, const std::string& message) {
  std::cerr << Json{{"error", kind}, {"message", message}}.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constant term algebra for type-A rational functions"};
  app.fallthrough();
  app.require_subcommand(1);
  Common opt;
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--threads", opt.threads, "Worker threads (default: CTALG_THREADS or all cores)");

  std::string input, expr, word, pole, a_list, t_list, roots, cls;
  int n = 0, s = -1, var = 0;
  bool interpolate_flag = false, verify = false;

  auto* ct = app.add_subcommand("ct", "Constant term of a type-A function");
  ct->add_option("--input", input, "typea JSON or expression file ('-' for stdin)");
  ct->add_option("--expr", expr, "Inline expression");
  ct->add_option("--pole", pole, "i,j: apply CT at x_i = x_j instead of the full constant term");

  auto* apply = app.add_subcommand("apply", "Apply an operator word or combination");
  apply->add_option("--word", word, "Word such as [2,3][1,3], or a combination")->required();
  apply->add_option("--input", input, "typea JSON or expression file");
  apply->add_option("--expr", expr, "Inline expression");

  auto* pfdc = app.add_subcommand("pfd", "Partial fraction decomposition in one variable");
  pfdc->add_option("--input", input, "typea JSON or expression file");
  pfdc->add_option("--expr", expr, "Inline expression");
  pfdc->add_option("--var", var, "Variable index")->required();

  auto* norm = app.add_subcommand("normalize", "Rewrite a word to nearly increasing form and expand in the basis");
  norm->add_option("--word", word, "Word")->required();
  norm->add_option("--n", n, "Number of variables");
  norm->add_option("--class", cls, "inc to force an increasing tree in top degree");

  auto* basis = app.add_subcommand("basis", "Enumerate forests");
  basis->add_option("--n", n, "Number of variables")->required();
  basis->add_option("--s", s, "Degree (number of edges)")->required();
  basis->add_option("--class", cls, "inc|ninc|aug-inc|aug-ninc (default: the basis class)");
  basis->add_option("--roots", roots, "Comma-separated roots to keep");

  auto* dim = app.add_subcommand("dim", "Dimension of a graded piece");
  dim->add_option("--n", n, "Number of variables")->required();
  dim->add_option("--s", s, "Degree")->required();
  dim->add_flag("--verify", verify, "Also compute the rank of the evaluation matrix");

  auto* dyson = app.add_subcommand("dyson", "Check the Dyson constant term identity");
  dyson->add_option("--a", a_list, "Exponents, e.g. 1,1,2")->required();

  auto* birk = app.add_subcommand("birkhoff", "Ehrhart values of the Birkhoff polytope");
  birk->add_option("--n", n, "Matrix size")->required();
  birk->add_option("--t", t_list, "Values: 0..9 or 1,2,3")->required();
  birk->add_flag("--interpolate", interpolate_flag, "Fit the polynomial of degree (n-1)^2");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    diagnose("ParseError", e.what());
    return 2;
  }

  try {
    if (ct->parsed()) {
      const TypeARational f = load_function(input, expr);
      if (!pole.empty()) {
        const auto ij = parse_int_list(pole, "--pole");
        if (ij.size() != 2) throw Error(ErrorKind::Parse, "--pole takes i,j");
        const TypeARational g = ct_pole(f, ij[0], ij[1]);
        emit(opt, typea_to_json(g), g.to_string());
      } else {
        const Rational v = ta_full_ct(f);
        emit(opt, Json{{"value", to_string(v)}}, to_string(v));
      }
    } else if (apply->parsed()) {
      const TypeARational f = load_function(input, expr);
      const OperatorCombo c = parse_combo(word);
      const TypeARational g = combo_apply(c, f);
      emit(opt, typea_to_json(g), g.to_string());
    } else if (pfdc->parsed()) {
      const TypeARational f = load_function(input, expr);
      const PfdResult r = pfd(f, var);
      Json j;
      j["var"] = r.var;
      Json poly = Json::array();
      std::string text = "polynomial: " + r.polynomial().to_string();
      for (const auto& [e, c] : r.polynomial_part) poly.push_back({{"exp", e}, {"coeff", typea_to_json(c)}});
      j["polynomial"] = poly;
      Json parts = Json::array();
      for (const auto& p : r.principal_parts) {
        Json alpha = Json::array();
        for (const auto& a : p.alpha) alpha.push_back(typea_to_json(a));
        parts.push_back({{"i", p.i}, {"u", p.u}, {"mult", p.q}, {"alpha", alpha},
                         {"at_zero", typea_to_json(p.at_zero())}});
        text += "\ncenter x" + std::to_string(p.i) + "=x" + std::to_string(p.u) + " mult " + std::to_string(p.q) +
                ": A(0) = " + p.at_zero().to_string();
        for (std::size_t e = 0; e < p.alpha.size(); ++e) {
          text += "\n  alpha" + std::to_string(e) + " = " + p.alpha[e].to_string();
        }
      }
      j["principal_parts"] = parts;
      j["denominator_bound"] = check_denominator_bound(r);
      text += std::string("\ndenominator bound: ") + (check_denominator_bound(r) ? "holds" : "violated");
      emit(opt, j, text);
    } else if (norm->parsed()) {
      const OperatorWord w = OperatorWord::parse(word);
      const int nn = n > 0 ? n : w.max_index();
      const bool inc = cls == "inc";
      if (!cls.empty() && cls != "inc" && cls != "ninc") throw Error(ErrorKind::Parse, "--class takes inc or ninc here");
      const SignedWord sw = inc ? rewrite_to_increasing(w, nn) : rewrite_to_nearly_increasing(w);
      const BasisExpansion be = expand_in_basis(w, nn);
      const OperatorCombo c = be.to_combo();
      emit(opt, Json{{"sign", sw.sign}, {"word", sw.word.to_string()}, {"basis", combo_to_json(c)}},
           "sign: " + sign_text(sw.sign) + "\nword: " + sw.word.to_string() + "\nbasis: " + combo_to_string(c));
    } else if (basis->parsed()) {
      std::vector<Forest> fs;
      if (cls.empty()) {
        fs = basis_forests(n, s);
      } else {
        fs = enumerate_forests(n, s, parse_class(cls));
      }
      if (!roots.empty()) {
        auto want = parse_int_list(roots, "--roots");
        std::sort(want.begin(), want.end());
        std::erase_if(fs, [&](const Forest& f) { return f.roots() != want; });
      }
      Json arr = Json::array();
      std::string text;
      for (const auto& f : fs) {
        arr.push_back({{"forest", forest_to_json(f)}, {"text", f.to_string()}, {"word", forest_realization(f).to_string()}});
        if (!text.empty()) text += '\n';
        text += f.to_string();
      }
      emit(opt, Json{{"n", n}, {"s", s}, {"count", fs.size()}, {"forests", arr}}, text);
    } else if (dim->parsed()) {
      if (verify) {
        const auto rep = xi_dimension_verified(n, s);
        emit(opt, Json{{"n", n}, {"s", s}, {"dimension", rep.dimension}, {"rank", rep.rank}},
             std::to_string(rep.dimension) + " (rank " + std::to_string(rep.rank) + ")");
      } else {
        const auto d = xi_dimension(n, s);
        emit(opt, Json{{"n", n}, {"s", s}, {"dimension", d}}, std::to_string(d));
      }
    } else if (dyson->parsed()) {
      const auto a = parse_int_list(a_list, "--a");
      const DysonResult r = cmd_dyson(a);
      emit(opt, Json{{"computed", to_string(r.computed)}, {"expected", to_string(r.expected)}, {"match", r.match}},
           "computed: " + to_string(r.computed) + "\nexpected: " + to_string(r.expected) +
               "\nmatch: " + (r.match ? "true" : "false"));
    } else if (birk->parsed()) {
      const auto ts = parse_t_values(t_list);
      const EhrhartResult r = cmd_birkhoff(n, ts, interpolate_flag, opt.threads);
      Json values = Json::object();
      std::string text;
      for (const auto& [t, v] : r.values) {
        values[std::to_string(t)] = to_string(v);
        if (!text.empty()) text += '\n';
        text += "H(" + std::to_string(t) + ") = " + to_string(v);
      }
      Json j{{"n", n}, {"values", values}};
      if (r.polynomial) {
        Json coeffs = Json::array();
        for (const auto& c : *r.polynomial) coeffs.push_back(to_string(c));
        j["polynomial"] = coeffs;
        text += "\nH(t) = " + poly_to_string(*r.polynomial);
      }
      emit(opt, j, text);
    }
  } catch (const Error& e) {
    diagnose(to_string(e.kind()), e.what());
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    diagnose("InternalError", e.what());
    return 1;
  }
  return 0;
}
