#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include "fewno/fewno.hpp"

namespace fewno::cli {

namespace {

using nlohmann::json;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::domain_error("cannot read file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_json_file(const std::string& path) {
  auto text = read_file(path);
  auto j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON in '" + path + "'", 0);
  return j;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : s) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(ch))) {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Integer parse_integer(const std::string& s) {
  Integer z;
  if (s.empty() || z.set_str(s[0] == '+' ? s.substr(1) : s, 10) != 0) throw UsageError("bad integer '" + s + "'");
  return z;
}

// "3", "-3/4" or "0.125"
Rational parse_rational(const std::string& s) {
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    if (digits == "-" || digits.empty()) throw UsageError("bad number '" + s + "'");
    Integer den;
    mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
    Rational q(parse_integer(digits), den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0) throw UsageError("bad number '" + s + "'");
  q.canonicalize();
  return q;
}

std::vector<Integer> parse_integer_list(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& t : split(s, ',')) out.push_back(parse_integer(t));
  return out;
}

// "0,1,2" is three points on the line; "0,0;1,0;0,1" uses ';' between points.
PointSet parse_support(const std::string& s) {
  std::vector<ExponentVector> pts;
  if (s.find(';') == std::string::npos) {
    for (const auto& t : split(s, ',')) pts.push_back({to_exponent(parse_integer(t))});
  } else {
    for (const auto& p : split(s, ';')) {
      ExponentVector v;
      for (const auto& t : split(p, ',')) v.push_back(to_exponent(parse_integer(t)));
      if (!pts.empty() && v.size() != pts.front().size()) throw UsageError("support points have different lengths");
      pts.push_back(std::move(v));
    }
  }
  return PointSet(std::move(pts));
}

json rationals(const std::vector<Rational>& v) {
  json out = json::array();
  for (const auto& q : v) out.push_back(rational_string(q));
  return out;
}

struct Input {
  std::string expr;
  std::string file;

  void attach(CLI::App* app) {
    app->add_option("--expr", expr, "polynomial text, e.g. \"x1^2-2*x1+1\"");
    app->add_option("--file", file, "polynomial JSON file");
  }

  SparsePolynomial polynomial() const {
    if (expr.empty() == file.empty()) throw UsageError("exactly one of --expr or --file is required");
    if (!expr.empty()) return parse_polynomial(expr);
    return polynomial_from_json(read_json_file(file));
  }
};

FeasOptions feas_options() {
  FeasOptions o;
  if (const char* env = std::getenv("FEWNO_MAX_BITS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0' || v < 64) throw UsageError("FEWNO_MAX_BITS must be an integer >= 64");
    o.sign.max_bits = static_cast<std::size_t>(v);
  }
  return o;
}

json witness_of(const std::optional<Certificate>& c) {
  if (!c) return nullptr;
  std::optional<std::vector<Rational>> p;
  if (auto r = std::get_if<RationalRoot>(&*c)) p = r->point;
  if (auto d = std::get_if<DegeneratePoint>(&*c)) p = d->exact;
  if (!p) return nullptr;
  return p->size() == 1 ? json(rational_string(p->front())) : rationals(*p);
}

json feas_payload(const SparsePolynomial& f, const std::string& set) {
  const auto options = feas_options();
  json out = {{"set", set}, {"polynomial", to_string(f)}};
  if (set == "positive") {
    auto r = classify_positive(f, options);
    out["verdict"] = to_string(r.positive);
    out["classification"] = r.classification ? json(to_string(*r.classification)) : json(nullptr);
    out["witness"] = witness_of(r.certificate);
    out["certificate"] = r.certificate ? to_json(*r.certificate) : json(nullptr);
    out["messages"] = r.messages;
    return out;
  }
  auto r = feas_real_full(f, options);
  const auto& w = set == "nonzero" ? r.nonzero_witness : r.real_witness;
  out["verdict"] = to_string(set == "nonzero" ? r.nonzero : r.real);
  out["witness"] = witness_of(w);
  out["certificate"] = w ? to_json(*w) : json(nullptr);
  out["report"] = to_json(r);
  return out;
}

json degenerate_json(const DegeneratePoint& p) {
  json j = to_json(Certificate{p});
  j.erase("kind");
  return j;
}

json sat3_payload(const std::string& path, bool brute_force) {
  auto phi = parse_dimacs(read_file(path));
  auto system = sat3_to_system(phi);
  json text = json::array();
  for (const auto& g : system) text.push_back(to_string(g));
  json out = {{"num_vars", phi.num_vars}, {"num_clauses", phi.clauses.size()}, {"system", to_json(system)}, {"text", text}};
  if (brute_force) {
    if (phi.num_vars > 24) throw std::domain_error("brute force limited to 24 variables");
    out["satisfiable"] = brute_force_satisfiable(phi);
    out["boolean_root"] = has_boolean_root(system);
  }
  return out;
}

PolySystem system_input(const std::string& path) {
  auto j = read_json_file(path);
  if (j.is_object()) return {polynomial_from_json(j)};
  return system_from_json(j);
}

std::vector<std::pair<Rational, Rational>> parse_box(const std::string& s, std::size_t n) {
  std::vector<std::pair<Rational, Rational>> box;
  for (const auto& part : split(s, ';')) {
    auto ends = split(part, ':');
    if (ends.size() != 2) throw UsageError("box entries are lo:hi");
    box.emplace_back(parse_rational(ends[0]), parse_rational(ends[1]));
  }
  if (box.size() == 1 && n > 1) box.resize(n, box.front());
  if (box.size() != n) throw UsageError("box has " + std::to_string(box.size()) + " ranges for " + std::to_string(n) + " variables");
  return box;
}

}  // namespace

json output_document(const CommandResult& r) {
  if (r.status == Status::Ok) return r.payload;
  return {{"status", "error"}, {"diagnostics", r.diagnostics}};
}

CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Exact feasibility for sparse polynomials with few terms", "fewno"};
  app.require_subcommand(1);
  json payload;

  // parse
  Input parse_in;
  auto* parse = app.add_subcommand("parse", "canonicalize and measure a polynomial");
  parse_in.attach(parse);
  parse->callback([&] {
    auto f = parse_in.polynomial();
    payload = {{"text", to_string(f)},
               {"polynomial", to_json(f)},
               {"bit_size", bit_size(f)},
               {"sparse_size", sparse_size(f)},
               {"laurent", f.is_laurent()}};
  });

  // feas
  Input feas_in;
  std::string set = "positive";
  auto* feas = app.add_subcommand("feas", "decide emptiness of a zero set");
  feas_in.attach(feas);
  feas->add_option("--set", set, "positive | nonzero | real")->check(CLI::IsMember({"positive", "nonzero", "real"}));
  feas->callback([&] { payload = feas_payload(feas_in.polynomial(), set); });

  // disc
  auto* disc = app.add_subcommand("disc", "circuit discriminant");
  disc->require_subcommand(1);
  std::string support_text, coeff_text;
  auto disc_leaf = [&](const char* name, const char* help) {
    auto* s = disc->add_subcommand(name, help);
    s->add_option("--support", support_text, "points, ';' between points and ',' between coordinates")->required();
    s->add_option("--coeffs", coeff_text, "comma-separated integers")->required();
    return s;
  };
  auto disc_inputs = [&] {
    auto a = parse_support(support_text);
    auto c = parse_integer_list(coeff_text);
    if (c.size() != a.size()) throw UsageError("support and coefficient counts differ");
    return std::make_pair(a, c);
  };
  disc_leaf("vanish", "does the discriminant vanish")->callback([&] {
    auto [a, c] = disc_inputs();
    const bool v = support_disc_vanish(a, c);
    payload = {{"vanish", v}};
  });
  disc_leaf("sign", "sign of the discriminant")->callback([&] {
    auto [a, c] = disc_inputs();
    const int sign = support_disc_sign(a, c, feas_options().sign);
    payload = {{"sign", sign}};
  });
  disc_leaf("point", "degenerate points of a circuit with vanishing discriminant")->callback([&] {
    auto [a, c] = disc_inputs();
    auto d = make_discriminant(make_circuit(a), c);
    json pts = json::array();
    for (const auto& p : degenerate_points(d)) pts.push_back(degenerate_json(p));
    payload = {{"relation", [&] {
                  json r = json::array();
                  for (const auto& m : d.circuit.relation) r.push_back(m.get_str());
                  return r;
                }()},
               {"points", pts}};
  });

  // topology
  Input topo_in;
  auto* topo = app.add_subcommand("topology", "component counts of the positive zero set");
  topo_in.attach(topo);
  topo->callback([&] { payload = to_json(topology_report(topo_in.polynomial(), feas_options())); });

  // reduce
  auto* reduce = app.add_subcommand("reduce", "hardness gadgets");
  reduce->require_subcommand(1);
  std::string dimacs, system_file;
  bool brute = false;
  auto* sat3 = reduce->add_subcommand("sat3", "3-SAT to a polynomial system");
  sat3->add_option("--dimacs", dimacs, "DIMACS CNF file")->required();
  sat3->add_flag("--brute-force", brute, "also decide satisfiability by exhaustive search");
  sat3->callback([&] { payload = sat3_payload(dimacs, brute); });
  auto* shor = reduce->add_subcommand("shor", "normal form with trinomials and binomials");
  shor->add_option("--file", system_file, "JSON list of polynomials")->required();
  shor->callback([&] {
    auto sys = system_input(system_file);
    auto snf = shor_normal_form(sys);
    json text = json::array();
    for (const auto& g : snf.system) text.push_back(to_string(g, snf.names));
    payload = {{"system", to_json(snf.system)},
               {"text", text},
               {"names", snf.names},
               {"original_vars", snf.original_vars},
               {"introduced", snf.introduced},
               {"size_in", sparse_size(sys)},
               {"size_out", sparse_size(snf.system)}};
  });
  auto* sos = reduce->add_subcommand("sos", "sum of squares of a system");
  sos->add_option("--file", system_file, "JSON list of polynomials")->required();
  sos->callback([&] {
    auto g = sos_aggregate(system_input(system_file));
    payload = {{"polynomial", to_json(g)}, {"text", to_string(g)}};
  });

  // oracle
  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks");
  oracle->require_subcommand(1);
  Input sturm_in, grid_in;
  std::string lo, hi, box_text, step_text = "1/8";
  auto* sturm = oracle->add_subcommand("sturm", "distinct real roots in (lo, hi]");
  sturm_in.attach(sturm);
  sturm->add_option("--lo", lo, "left end (default -inf)");
  sturm->add_option("--hi", hi, "right end (default +inf)");
  sturm->callback([&] {
    auto f = sturm_in.polynomial();
    oracle::Endpoint l, r;
    if (!lo.empty()) l = parse_rational(lo);
    if (!hi.empty()) r = parse_rational(hi);
    const std::size_t count = oracle::sturm_count(f, l, r);
    payload = {{"count", count}};
  });
  auto* grid = oracle->add_subcommand("grid", "grid search for a root or a sign change");
  grid_in.attach(grid);
  grid->add_option("--box", box_text, "lo:hi per coordinate, ';'-separated")->required();
  grid->add_option("--step", step_text, "grid spacing");
  grid->callback([&] {
    auto f = grid_in.polynomial();
    auto box = parse_box(box_text, f.num_vars());
    auto cert = oracle::grid_scan(f, box, parse_rational(step_text));
    payload = {{"found", cert.has_value()}};
    if (cert) {
      payload["zero"] = cert->zero;
      payload["p"] = rationals(cert->p);
      payload["q"] = rationals(cert->q);
    }
  });
  std::string alphas, betas, us, vs;
  auto* product = oracle->add_subcommand("product", "sign of prod a^u - prod b^v by full expansion");
  product->add_option("--alphas", alphas)->required();
  product->add_option("--betas", betas)->required();
  product->add_option("--us", us)->required();
  product->add_option("--vs", vs)->required();
  product->callback([&] {
    auto a = parse_integer_list(alphas), b = parse_integer_list(betas);
    auto u = parse_integer_list(us), v = parse_integer_list(vs);
    // computed before the initializer list: a throw inside one leaks on older GCC
    const int sign = oracle::exact_product_compare(a, b, u, v);
    payload = {{"sign", sign}};
  });

  CommandResult result;
  auto fail = [&](int code, const std::string& msg) {
    result.status = Status::Error;
    result.exit_code = code;
    result.diagnostics.push_back(msg);
    result.payload = json::object();
  };
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    result.payload = std::move(payload);
  } catch (const CLI::CallForHelp&) {
    result.payload = {{"help", app.help()}};
  } catch (const CLI::CallForAllHelp&) {
    result.payload = {{"help", app.help("", CLI::AppFormatMode::All)}};
  } catch (const CLI::ParseError& e) {
    fail(2, e.what());
  } catch (const UsageError& e) {
    fail(2, e.what());
  } catch (const ParseError& e) {
    fail(1, std::string("parse error at ") + std::to_string(e.position()) + ": " + e.what());
  } catch (const PrecisionExhausted& e) {
    fail(1, std::string("precision exhausted: ") + e.what());
  } catch (const std::exception& e) {
    fail(1, e.what());
  }
  return result;
}

}  // namespace fewno::cli
