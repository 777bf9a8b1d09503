#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tenv/backends/backend.hpp"
#include "tenv/engine/engine.hpp"
#include "tenv/groupchar/automorphism.hpp"
#include "tenv/lattice/lattice.hpp"
#include "tenv/symfunc/symfunc.hpp"

using namespace tenv;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string backend = "setop";
  int q = 2;
  int dim = -1;
  int n = -1;
  std::string group;
  std::string group_table;
  std::vector<std::string> eval;
  std::string format = "text";
  std::string config;
  // per command
  std::string a, b;
  std::string lambda, mu;
  int stable_n = -1;
  std::string which = "quot";
  std::string lattice_file;
  std::string suite = "all";
};

struct Session {
  std::unique_ptr<MalcevBackend> backend;
  std::unique_ptr<Engine> engine;
  std::map<std::string, Rational> point;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Session open_session(const RunConfig& c) {
  Session s;
  if (c.backend == "setop") s.backend = make_setop_backend();
  else if (c.backend == "vectfq") {
    if (c.q < 2) throw UsageError("--q must be a prime");
    for (int d = 2; d * d <= c.q; ++d)
      if (c.q % d == 0) throw UsageError("--q must be a prime");
    s.backend = make_vectfq_backend(c.q);
  } else if (c.backend == "group")
    s.backend = make_group_backend();
  else
    throw UsageError("unknown backend '" + c.backend + "' (setop, vectfq, group)");
  s.engine = std::make_unique<Engine>(*s.backend);
  auto vars = s.backend->variables();
  std::vector<std::string> items;
  for (const auto& e : c.eval) {
    std::stringstream ss(e);
    std::string item;
    while (std::getline(ss, item, ','))
      if (!item.empty()) items.push_back(item);
  }
  for (const auto& kv : items) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw UsageError("--eval expects var=value");
    std::string var = kv.substr(0, eq);
    Rational val;
    try {
      val = parse_rational(kv.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad value in --eval " + kv);
    }
    if (c.backend != "group" && std::find(vars.begin(), vars.end(), var) == vars.end())
      throw UsageError("unknown variable '" + var + "'");
    s.point[var] = val;
  }
  return s;
}

ObjId object_of(Session& s, const RunConfig& c) {
  auto& b = *s.backend;
  if (c.backend == "setop") {
    if (c.n < 0) throw UsageError("setop needs --n");
    return b.parse_object(std::to_string(c.n));
  }
  if (c.backend == "vectfq") {
    if (c.dim < 0) throw UsageError("vectfq needs --dim");
    return b.parse_object(std::to_string(c.dim));
  }
  if (!c.group_table.empty()) return register_group(b, groups::from_json(read_file(c.group_table)));
  if (!c.group.empty()) return b.parse_object(c.group);
  throw UsageError("group backend needs --group or --group-table");
}

// "object:character": character is a row label, "triv", or "#index"
SimpleLabel parse_label(Session& s, const std::string& text) {
  auto colon = text.find(':');
  std::string obj = colon == std::string::npos ? text : text.substr(0, colon);
  std::string chr = colon == std::string::npos ? "triv" : text.substr(colon + 1);
  ObjId x;
  try {
    x = s.backend->parse_object(obj);
  } catch (const ScaleLimit&) {
    throw;
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  const auto& t = s.backend->aut_table(x);
  if (chr == "triv") return {x, t.trivial_row()};
  if (!chr.empty() && chr[0] == '#') {
    int i = -1;
    try {
      i = std::stoi(chr.substr(1));
    } catch (...) {
    }
    if (i < 0 || i >= t.size()) throw UsageError("character index out of range in '" + text + "'");
    return {x, i};
  }
  for (int i = 0; i < t.size(); ++i)
    if (t.row_labels[i] == chr) return {x, i};
  throw UsageError("unknown character '" + chr + "' of " + s.backend->label(x));
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string o = "\"";
  for (char c : s) o += c == '"' ? std::string("\"\"") : std::string(1, c);
  return o + "\"";
}

std::string evaluated(const Session& s, const MPoly& p) {
  MPoly v = p.evaluate(s.point);
  return v.to_string();
}

// ------------------------------------------------------------ commands

int cmd_dims(const RunConfig& c) {
  Session s = open_session(c);
  ObjId x = object_of(s, c);
  auto rows = s.engine->dims(x);
  if (c.format == "json") {
    ojson j = ojson::array();
    for (const auto& r : rows) {
      ojson o;
      o["label"] = r.name;
      o["character_index"] = r.label.chi;
      o["character_degree"] = to_string(r.degree);
      o["polynomial"] = r.polynomial.to_string();
      o["factored_form"] = r.factored;
      if (!s.point.empty()) o["value"] = evaluated(s, r.polynomial);
      j.push_back(o);
    }
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "label,character_index,character_degree,polynomial,factored_form" << (s.point.empty() ? "" : ",value") << "\n";
    for (const auto& r : rows) {
      std::cout << csv_field(r.name) << "," << r.label.chi << "," << to_string(r.degree) << "," << csv_field(r.polynomial.to_string())
                << "," << csv_field(r.factored);
      if (!s.point.empty()) std::cout << "," << csv_field(evaluated(s, r.polynomial));
      std::cout << "\n";
    }
  } else {
    std::size_t w = 0;
    for (const auto& r : rows) w = std::max(w, r.name.size());
    for (const auto& r : rows) {
      std::cout << "dim " << r.name << std::string(w - r.name.size(), ' ') << " = " << r.factored;
      if (!s.point.empty()) std::cout << "  [" << evaluated(s, r.polynomial) << "]";
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_tensor(const RunConfig& c) {
  if (c.a.empty() || c.b.empty()) throw UsageError("tensor needs two labels, e.g. tensor 1:triv 1:triv");
  Session s = open_session(c);
  SimpleLabel a = parse_label(s, c.a), b = parse_label(s, c.b);
  auto t = s.engine->tensor_decompose(a, b);
  if (c.format == "json") {
    ojson j;
    j["a"] = s.engine->label_name(a);
    j["b"] = s.engine->label_name(b);
    j["entries"] = ojson::parse(t.to_json());
    j["audit"] = {{"sum_of_dimensions", t.audit_lhs.to_string()},
                  {"product_of_dimensions", t.audit_rhs.to_string()},
                  {"ok", t.audit_ok()}};
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "object_class,character_index,character,character_degree,multiplicity\n";
    for (const auto& e : t.entries)
      std::cout << csv_field(e.object_class) << "," << e.label.chi << "," << csv_field(e.character) << ","
                << to_string(e.character_degree) << "," << to_string(e.multiplicity) << "\n";
  } else {
    std::cout << s.engine->label_name(a) << " (x) " << s.engine->label_name(b) << "\n";
    for (const auto& e : t.entries)
      std::cout << "  " << to_string(e.multiplicity) << " x [" << e.object_class << "]0_" << e.character << "\n";
    std::cout << "audit: " << (t.audit_ok() ? "ok" : "FAILED") << "  " << factor_linear(t.audit_rhs).to_string() << "\n";
  }
  if (!t.audit_ok()) return 4;
  return 0;
}

int cmd_stable_kron(const RunConfig& c) {
  Partition l, m;
  try {
    l = Partition::parse(c.lambda);
    m = Partition::parse(c.mu);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  SchurVector v;
  if (c.stable_n >= 0) {
    try {
      v = stable_kronecker_limit(l, m, c.stable_n);
    } catch (const std::domain_error& e) {
      throw UsageError(e.what());
    }
  } else {
    v = stable_kronecker_littlewood(l, m);
  }
  if (c.format == "json") std::cout << v.to_json() << "\n";
  else if (c.format == "csv") {
    std::cout << "partition,coefficient\n";
    for (const auto& [p, k] : v.terms()) std::cout << csv_field(p.to_string()) << "," << to_string(k) << "\n";
  } else
    std::cout << v.to_compact_string() << "\n";
  return 0;
}

int cmd_char_table(const RunConfig& c) {
  Session s = open_session(c);
  ObjId x = object_of(s, c);
  const auto& t = s.backend->aut_table(x);
  if (c.format == "json") {
    std::cout << ojson::parse(t.to_json()).dump(2) << "\n";
    return 0;
  }
  const auto& cd = *t.classes;
  if (c.format == "csv") {
    std::cout << "character";
    for (const auto& l : cd.labels) std::cout << "," << csv_field(l);
    std::cout << "\n";
    for (int i = 0; i < t.size(); ++i) {
      std::cout << csv_field(t.row_labels[i]);
      for (const auto& v : t.rows[i]) std::cout << "," << csv_field(v.to_string());
      std::cout << "\n";
    }
    return 0;
  }
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"class"});
  for (const auto& l : cd.labels) cells.back().push_back(l);
  cells.push_back({"size"});
  for (const auto& z : cd.sizes) cells.back().push_back(to_string(z));
  for (int i = 0; i < t.size(); ++i) {
    cells.push_back({t.row_labels[i]});
    for (const auto& v : t.rows[i]) cells.back().push_back(v.to_string());
  }
  std::vector<std::size_t> w(cells[0].size(), 0);
  for (const auto& row : cells)
    for (std::size_t k = 0; k < row.size(); ++k) w[k] = std::max(w[k], row[k].size());
  std::cout << "Aut(" << s.backend->label(x) << "), order " << to_string(cd.group_order) << "\n";
  for (const auto& row : cells) {
    std::string line;
    for (std::size_t k = 0; k < row.size(); ++k) line += (k ? "  " : "") + row[k] + std::string(w[k] - row[k].size(), ' ');
    std::cout << line.substr(0, line.find_last_not_of(' ') + 1) << "\n";
  }
  return 0;
}

int cmd_mobius(const RunConfig& c) {
  FiniteLattice L;
  std::string what;
  if (!c.lattice_file.empty()) {
    L = lattice_from_json(read_file(c.lattice_file));
    what = c.lattice_file;
  } else {
    Session s = open_session(c);
    ObjId x = object_of(s, c);
    if (c.which == "quot") L = s.backend->quot_lattice(x);
    else if (c.which == "sub") L = s.backend->sub_lattice(x);
    else throw UsageError("--which must be sub or quot");
    what = c.which + "(" + s.backend->label(x) + ")";
  }
  auto st = structure(L);
  std::string cls;
  try {
    cls = st.is_modular && st.is_complemented ? classify(L) : "";
  } catch (const std::exception&) {
    cls = "";
  }
  Integer mu = L.mobius(L.bottom(), L.top());
  if (c.format == "json") {
    ojson j;
    j["lattice"] = what;
    j["size"] = L.size();
    j["mobius"] = to_string(mu);
    j["modular"] = st.is_modular;
    j["complemented"] = st.is_complemented;
    if (st.rank) j["rank"] = *st.rank;
    else j["rank"] = nullptr;
    j["atoms"] = st.atoms.size();
    j["classification"] = cls;
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "lattice,size,mobius,modular,complemented,rank,classification\n";
    std::cout << csv_field(what) << "," << L.size() << "," << to_string(mu) << "," << st.is_modular << "," << st.is_complemented
              << "," << (st.rank ? std::to_string(*st.rank) : "") << "," << csv_field(cls) << "\n";
  } else {
    std::cout << what << ": " << L.size() << " elements, mu(0,1) = " << to_string(mu) << ", "
              << (st.is_modular ? "modular" : "not modular") << ", " << (st.is_complemented ? "complemented" : "not complemented");
    if (st.rank) std::cout << ", rank " << *st.rank;
    if (!cls.empty()) std::cout << ", " << cls;
    std::cout << "\n";
  }
  return 0;
}

int cmd_omega(const RunConfig& c) {
  Session s = open_session(c);
  ObjId x = object_of(s, c);
  MPoly w = s.backend->omega_object(x);
  auto rep = s.engine->nondegeneracy_report({x}, s.point.empty() ? nullptr : &s.point);
  bool degenerate = std::any_of(rep.begin(), rep.end(), [](const auto& e) { return e.vanishes; });
  if (c.format == "json") {
    ojson j;
    j["object"] = s.backend->label(x);
    j["omega"] = w.to_string();
    j["factored_form"] = factor_linear(w).to_string();
    if (!s.point.empty()) j["value"] = evaluated(s, w);
    j["indecomposable_epis"] = ojson::array();
    for (const auto& e : rep) {
      ojson o;
      o["epi"] = e.epi;
      o["omega"] = e.omega.to_string();
      if (e.value) o["value"] = to_string(*e.value);
      o["vanishes"] = e.vanishes;
      j["indecomposable_epis"].push_back(o);
    }
    j["nondegenerate"] = !degenerate;
    std::cout << j.dump(2) << "\n";
  } else if (c.format == "csv") {
    std::cout << "epi,omega,value,vanishes\n";
    for (const auto& e : rep)
      std::cout << csv_field(e.epi) << "," << csv_field(e.omega.to_string()) << "," << (e.value ? to_string(*e.value) : "") << ","
                << e.vanishes << "\n";
  } else {
    std::cout << "omega(" << s.backend->label(x) << ") = " << factor_linear(w).to_string();
    if (!s.point.empty()) std::cout << "  [" << evaluated(s, w) << "]";
    std::cout << "\n";
    for (const auto& e : rep) {
      std::cout << "  " << e.epi << ": " << e.omega.to_string();
      if (e.value) std::cout << " = " << to_string(*e.value);
      if (e.vanishes) std::cout << "  (vanishes)";
      std::cout << "\n";
    }
    std::cout << (degenerate ? "degenerate" : "non-degenerate") << "\n";
  }
  return 0;
}

// ------------------------------------------------------------ selftest

using Check = std::pair<std::string, std::function<bool()>>;

std::vector<Check> checks_for(const std::string& suite) {
  std::vector<Check> out;
  bool all = suite == "all";
  if (all || suite == "lattice") {
    out.push_back({"lattice: subspace mobius", [] {
                     auto b = make_vectfq_backend(2);
                     const auto& L = b->quot_lattice(3);
                     return L.mobius(L.bottom(), L.top()) == -8 && is_modular(L);
                   }});
    out.push_back({"lattice: mu vanishing", [] {
                     auto L = lattices::product(lattices::diamond(3), lattices::chain(3));
                     for (const auto& f : mu_vanishing_profile(L))
                       if (!f.all_equal()) return false;
                     return true;
                   }});
  }
  if (all || suite == "symfunc") {
    out.push_back({"symfunc: Littlewood vs stability", [] {
                     auto a = Partition::parse("[2]"), b = Partition::parse("[1,1]");
                     return stable_kronecker_littlewood(a, b) == stable_kronecker_limit(a, b, 8);
                   }});
    out.push_back({"symfunc: Charlier identity", [] {
                     for (const auto& l : partitions_up_to(5))
                       if (charlier_dimension_sum(l) != deligne_dim(l)) return false;
                     return true;
                   }});
  }
  if (all || suite == "engine") {
    out.push_back({"engine: F2^3 dimensions", [] {
                     auto b = make_vectfq_backend(2);
                     Engine e(*b);
                     MPoly sum;
                     const auto& t = b->aut_table(3);
                     for (int i = 0; i < t.size(); ++i) sum += e.simple_dim({3, i}) * t.degree(i);
                     return sum == e.dim_x0(3);
                   }});
    out.push_back({"engine: two character formulas", [] {
                     auto b = make_group_backend();
                     Engine e(*b);
                     for (const char* n : {"S3", "D4", "Q8"}) {
                       ObjId x = b->parse_object(n);
                       const auto& A = b->aut(x);
                       for (int c = 0; c < A.class_count(); ++c)
                         if (e.char_x0(x, A.class_rep(c)) != e.char_x0_homological(x, A.class_rep(c))) return false;
                     }
                     return true;
                   }});
    out.push_back({"engine: tensor audit", [] {
                     auto b = make_setop_backend();
                     Engine e(*b);
                     return e.tensor_decompose({2, 1}, {1, 0}).audit_ok();
                   }});
  }
  if (all || suite == "backends") {
    out.push_back({"backends: end dimension", [] {
                     auto b = make_setop_backend();
                     Engine e(*b);
                     auto c = e.end_dim_check(2);
                     return c.ok() && c.grouped == 15;
                   }});
  }
  if (out.empty()) throw UsageError("unknown selftest suite '" + suite + "' (lattice, symfunc, engine, backends, all)");
  return out;
}

int cmd_selftest(const RunConfig& c) {
  auto checks = checks_for(c.suite);
  bool ok = true;
  for (const auto& [name, f] : checks) {
    bool pass = false;
    try {
      pass = f();
    } catch (const std::exception& e) {
      std::cout << "error in " << name << ": " << e.what() << "\n";
    }
    std::cout << (pass ? "ok   " : "FAIL ") << name << "\n";
    ok = ok && pass;
  }
  return ok ? 0 : 4;
}

void apply_config(const std::string& path, RunConfig& c, CLI::App& app) {
  auto j = nlohmann::json::parse(read_file(path));
  auto set_str = [&](const char* key, const char* flag, std::string& dst) {
    if (j.contains(key) && app.count(flag) == 0) dst = j[key].get<std::string>();
  };
  auto set_int = [&](const char* key, const char* flag, int& dst) {
    if (j.contains(key) && app.count(flag) == 0) dst = j[key].get<int>();
  };
  set_str("backend", "--backend", c.backend);
  set_int("q", "--q", c.q);
  set_int("dim", "--dim", c.dim);
  set_int("n", "--n", c.n);
  set_str("group", "--group", c.group);
  set_str("group_table", "--group-table", c.group_table);
  set_str("format", "--format", c.format);
  if (j.contains("eval") && app.count("--eval") == 0) {
    for (auto it = j["eval"].begin(); it != j["eval"].end(); ++it)
      c.eval.push_back(it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump()));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tensor categories of relations: dimensions, characters and tensor multiplicities"};
  app.require_subcommand(1);
  RunConfig c;
  app.add_option("--backend", c.backend, "setop | vectfq | group")->check(CLI::IsMember({"setop", "vectfq", "group"}));
  app.add_option("--q", c.q, "field size for vectfq");
  app.add_option("--dim", c.dim, "dimension of the vectfq object");
  app.add_option("--n", c.n, "size of the setop object");
  app.add_option("--group", c.group, "group name: C4, S3, D4, Q8, A4, C2xC3, ...");
  app.add_option("--group-table", c.group_table, "JSON multiplication table");
  app.add_option("--eval", c.eval, "specialize a variable, e.g. t=5 (repeatable)");
  app.add_option("--format", c.format, "text | json | csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--config", c.config, "JSON file with the same keys as the flags");

  auto* dims = app.add_subcommand("dims", "dimensions of all simples [x]0_chi");
  auto* tensor = app.add_subcommand("tensor", "decompose [x1]0_chi1 (x) [x2]0_chi2");
  tensor->add_option("a", c.a, "label object:character, e.g. 1:triv or 2:[1,1]")->required();
  tensor->add_option("b", c.b, "second label")->required();
  auto* sk = app.add_subcommand("stable-kron", "stable Kronecker product s_lambda * s_mu");
  sk->add_option("lambda", c.lambda, "partition, e.g. [2,1]")->required();
  sk->add_option("mu", c.mu, "partition")->required();
  sk->add_option("--at", c.stable_n, "use Kronecker coefficients of padded partitions in S_n");
  auto* ct = app.add_subcommand("char-table", "character table of Aut(x)");
  auto* mob = app.add_subcommand("mobius", "Mobius number and structure of sO(x), qO(x) or a lattice file");
  mob->add_option("--which", c.which, "sub | quot");
  mob->add_option("--lattice-file", c.lattice_file, "lattice JSON");
  auto* om = app.add_subcommand("omega", "omega of x and of its indecomposable quotients");
  auto* st = app.add_subcommand("selftest", "run invariant checks");
  st->add_option("suite", c.suite, "lattice | symfunc | engine | backends | all");
  for (auto* sub : {dims, tensor, sk, ct, mob, om, st}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (!c.config.empty()) apply_config(c.config, c, app);
    if (*dims) return cmd_dims(c);
    if (*tensor) return cmd_tensor(c);
    if (*sk) return cmd_stable_kron(c);
    if (*ct) return cmd_char_table(c);
    if (*mob) return cmd_mobius(c);
    if (*om) return cmd_omega(c);
    if (*st) return cmd_selftest(c);
  } catch (const ScaleLimit& e) {
    std::cerr << "scale limit: " << e.what() << "\n";
    return 3;
  } catch (const std::length_error& e) {
    std::cerr << "scale limit: " << e.what() << "\n";
    return 3;
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 4;
  }
  return 2;
}
