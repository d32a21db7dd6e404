#include "dmod/job.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <map>
#include <sstream>

#include "dmod/bernstein.hpp"
#include "dmod/dmodops.hpp"
#include "dmod/parse.hpp"

namespace dmod {

using Json = nlohmann::ordered_json;

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double d = std::stod(v, &used);
    if (used != v.size() || d < 0) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw JobError("bad value for " + key + ": '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw JobError("bad value for " + key + ": '" + v + "'");
}

// Typed copy of a result field, used for expect.<field> checks.
struct Field {
  enum Kind { IdealK, PolyK, IntK, BoolK } kind;
  RingPtr ring;
  std::vector<WeylOperator> ideal;
  RationalUnivariate poly;
  Integer integer;
  bool flag = false;
};

class Run {
 public:
  explicit Run(const Job& job) : job_(job) {}

  Report execute();

 private:
  void compute();
  void gb();
  void ann();
  void bfun();
  void loc(bool cohomology_only);
  void lambda_mod();
  void mult();
  void verify();
  void check_expectations();

  Budget budget(const char* stage) const {
    Budget b = base_;
    b.stage = stage;
    return b;
  }

  void put_ideal(const std::string& key, const std::vector<WeylOperator>& I, const RingPtr& r) {
    auto sorted = I;
    std::sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return canonical_greater(b.terms()[0].first, a.terms()[0].first); });
    Json arr = Json::array();
    for (const auto& g : sorted) arr.push_back(g.str());
    result_[key] = arr;
    fields_[key] = Field{Field::IdealK, r, I, RationalUnivariate(), 0, false};
  }
  void put_poly(const std::string& key, const RationalUnivariate& p) {
    result_[key] = p.factored();
    result_[key + "_expanded"] = p.str();
    fields_[key] = Field{Field::PolyK, nullptr, {}, p, 0, false};
  }
  void put_int(const std::string& key, const Integer& v) {
    if (v.fits_slong_p())
      result_[key] = v.get_si();
    else
      result_[key] = v.get_str();
    fields_[key] = Field{Field::IntK, nullptr, {}, RationalUnivariate(), v, false};
  }
  void put_bool(const std::string& key, bool v) {
    result_[key] = v;
    fields_[key] = Field{Field::BoolK, nullptr, {}, RationalUnivariate(), 0, v};
  }
  void put_presentation(const std::string& key, const Presentation& p);

  const Job& job_;
  Budget base_;
  RingPtr ring_;
  CyclicDMod* module_ = nullptr;
  std::optional<CyclicDMod> module_store_;
  std::optional<PolyWithParam> f_;
  Json result_ = Json::object();
  std::map<std::string, Field> fields_;
  Json checks_ = Json::array();
  bool checks_ok_ = true;
};

void Run::put_presentation(const std::string& key, const Presentation& p) {
  Json o = Json::object();
  const bool zero = p.is_zero(budget("presentation"));
  Integer mult = 0;
  o["zero"] = zero;
  o["rank"] = zero ? 0 : p.rank;
  if (p.cyclic_annihilator && !zero) {
    o["generator"] = p.cyclic_label;
    Json arr = Json::array();
    for (const auto& g : *p.cyclic_annihilator) arr.push_back(g.str());
    o["annihilator"] = arr;
    auto h = bernstein_dimension_multiplicity(*p.cyclic_annihilator, p.ring, budget("multiplicity"));
    o["dimension"] = h.dimension;
    o["multiplicity"] = h.multiplicity.get_si();
    mult = h.multiplicity;
  } else if (!zero) {
    Json arr = Json::array();
    for (const auto& v : p.relations) arr.push_back(module_element_str(v));
    o["relations"] = arr;
    auto h = bernstein_dimension_multiplicity(p.relations, p.rank, p.ring, budget("multiplicity"));
    o["dimension"] = h.dimension;
    o["multiplicity"] = h.multiplicity.get_si();
    mult = h.multiplicity;
  }
  result_[key] = o;
  fields_[key + ".multiplicity"] = Field{Field::IntK, nullptr, {}, RationalUnivariate(), mult, false};
  if (zero)
    fields_[key] = Field{Field::IdealK, p.ring, {WeylOperator::constant(p.ring, 1)}, RationalUnivariate(), 0, false};
  else if (p.cyclic_annihilator)
    fields_[key] = Field{Field::IdealK, p.ring, *p.cyclic_annihilator, RationalUnivariate(), 0, false};
}

void Run::gb() {
  TermOrder order;
  const std::string& o = job_.order;
  auto named_weights = [&](const std::string& spec, bool block) {
    std::vector<int> w(ring_->nvars(), 0);
    std::vector<std::size_t> slots;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      std::string name = item;
      int value = 1;
      if (!block) {
        auto eq = item.find('=');
        if (eq == std::string::npos) throw JobError("weight entry needs name=value: '" + item + "'");
        name = trim(item.substr(0, eq));
        try {
          value = std::stoi(trim(item.substr(eq + 1)));
        } catch (const std::exception&) {
          throw JobError("bad weight in '" + item + "'");
        }
      }
      auto slot = ring_->index_of(name);
      if (!slot) throw JobError("unknown variable in order: '" + name + "'");
      w[*slot] = value;
      slots.push_back(*slot);
    }
    return block ? TermOrder::eliminating(slots) : TermOrder::weighted(w);
  };
  if (o == "degrevlex" || o == "total-degree")
    order = TermOrder::degrevlex();
  else if (o.rfind("weight:", 0) == 0)
    order = named_weights(o.substr(7), false);
  else if (o.rfind("elim:", 0) == 0)
    order = named_weights(o.substr(5), true);
  else
    throw JobError("unknown order '" + o + "'");
  auto basis = buchberger(module_->ideal, order, budget("groebner"));
  std::vector<WeylOperator> els;
  for (const auto& g : basis.ideal_elements()) els.push_back(g);
  put_ideal("basis", els, ring_);
  put_int("size", static_cast<long>(els.size()));
}

void Run::ann() {
  auto a = ann_fs(*module_, *f_, base_);
  put_ideal("annihilator", a.generators, a.ring);
  put_bool("via_localization", a.via_localization);
  put_bool("holonomicity_verified", a.holonomicity_verified);
  if (!a.holonomicity_verified) result_["note"] = "holonomicity unverified";
}

void Run::bfun() {
  auto r = bfunction(*module_, *f_, base_);
  put_bool("exists", r.exists);
  if (!r.exists) return;
  put_poly("b", r.b);
  Json roots = Json::array();
  for (const auto& rt : rational_roots(r.b)) roots.push_back({{"value", rt.value.get_str()}, {"multiplicity", rt.multiplicity}});
  result_["roots"] = roots;
}

void Run::loc(bool cohomology_only) {
  auto l = localize(*module_, *f_, base_);
  if (!cohomology_only) {
    put_poly("integration_bfunction", l.integration_bfunction);
    put_int("k0", l.k0);
    result_["generators"] = l.labels;
    Json rel = Json::array();
    for (const auto& v : l.localized.relations) rel.push_back(module_element_str(v));
    result_["relations"] = rel;
    put_ideal("iota", l.iota_annihilator, ring_);
    put_int("iota_multiplicity",
            bernstein_dimension_multiplicity(l.iota_annihilator, ring_, budget("multiplicity")).multiplicity);
    put_int("generator_index", static_cast<long>(l.generator_index));
    if (l.k0 >= 0) result_["generator"] = l.labels[l.generator_index];
    put_ideal("localized", l.generator_annihilator, ring_);
    auto h = bernstein_dimension_multiplicity(l.generator_annihilator, ring_, budget("multiplicity"));
    put_int("localized_dimension", h.dimension);
    put_int("localized_multiplicity", h.multiplicity);
  }
  put_bool("saturated", l.h0.is_zero(budget("presentation")));
  put_presentation("h0", l.h0);
  put_presentation("h1", l.h1);
}

void Run::lambda_mod() {
  Rational lambda;
  try {
    lambda = parse_rational(job_.lambda);
  } catch (const ParseError& e) {
    throw JobError(e.what());
  }
  auto a = ann_fs(*module_, *f_, base_);
  auto b = bfunction_from_annihilator(a, base_);
  put_poly("b", b);
  result_["lambda"] = lambda.get_str();
  put_int("k0", generator_level(b, lambda));
  put_bool("generates", generation_check(b, lambda));
  put_ideal("ideal", lambda_module(a, b, lambda, base_), ring_);
}

void Run::mult() {
  auto h = bernstein_dimension_multiplicity(module_->ideal, ring_, budget("multiplicity"));
  put_bool("zero_module", h.zero_module());
  put_int("dimension", h.dimension);
  put_int("multiplicity", h.multiplicity);
  result_["hilbert_polynomial"] = h.hilbert_polynomial.str();
  put_int("threshold", h.threshold);
  put_bool("holonomic", h.zero_module() || h.dimension == static_cast<int>(ring_->n()));
}

void Run::verify() {
  auto a = ann_fs(*module_, *f_, base_);
  put_ideal("annihilator", a.generators, a.ring);
  auto b = bfunction_from_annihilator(a, base_);
  put_poly("b", b);
  auto P = functional_equation_operator(a, b, base_);
  if (P) result_["operator"] = P->str();
  const bool fe = verify_functional_equation(*module_, a, b, base_);
  const bool mn = verify_minimality(a, b, base_);
  put_bool("functional_equation", fe);
  put_bool("minimal", mn);
  checks_ok_ = checks_ok_ && fe && mn;
}

void Run::check_expectations() {
  for (const auto& [key, text] : job_.expect) {
    Json c{{"field", key}, {"expected", text}};
    bool ok = false;
    auto it = fields_.find(key);
    if (it == fields_.end()) {
      c["error"] = "no such result field";
    } else {
      const Field& fld = it->second;
      switch (fld.kind) {
        case Field::IdealK: {
          auto want = parse_operator_list(fld.ring, text);
          ok = ideals_equal(fld.ideal, want, budget("expectation"));
          break;
        }
        case Field::PolyK: {
          auto r = param_ring(ring_);
          ok = to_univariate(parse_operator(r, text), *r->param_slot("s")) == fld.poly;
          break;
        }
        case Field::IntK:
          ok = Integer(text) == fld.integer;
          break;
        case Field::BoolK:
          ok = parse_bool(key, text) == fld.flag;
          break;
      }
    }
    c["ok"] = ok;
    checks_ok_ = checks_ok_ && ok;
    checks_.push_back(c);
  }
}

void Run::compute() {
  if (job_.command == "gb")
    gb();
  else if (job_.command == "ann-fs")
    ann();
  else if (job_.command == "bfun")
    bfun();
  else if (job_.command == "localize")
    loc(false);
  else if (job_.command == "lochom")
    loc(true);
  else if (job_.command == "lambda-mod")
    lambda_mod();
  else if (job_.command == "mult")
    mult();
  else if (job_.command == "verify")
    verify();
}

Report Run::execute() {
  const auto start = std::chrono::steady_clock::now();
  Json doc = Json::object();
  if (!job_.name.empty()) doc["name"] = job_.name;
  doc["command"] = job_.command;
  Json input = Json::object();
  input["ring"] = job_.ring;
  input["ideal"] = job_.ideal;
  if (!job_.f.empty()) input["f"] = job_.f;
  if (!job_.lambda.empty()) input["lambda"] = job_.lambda;
  if (job_.command == "gb") input["order"] = job_.order;
  doc["input"] = input;

  std::string status = "ok", message;
  int code = kExitOk;
  try {
    validate(job_);
    if (job_.budget_seconds > 0) base_ = Budget::seconds(job_.budget_seconds);
    base_.max_steps = job_.max_steps;
    ring_ = RingContext::make(job_.ring);
    module_store_.emplace(ring_, job_.ideal.empty() ? std::vector<WeylOperator>{}
                                                    : parse_operator_list(ring_, job_.ideal));
    module_ = &*module_store_;
    if (!job_.f.empty()) {
      f_.emplace(parse_operator(ring_, job_.f));
      if (f_->is_zero() || f_->is_constant()) throw JobError("f must be a non-constant polynomial");
    }
    compute();
    check_expectations();
    if (!checks_ok_) {
      status = "verification_failed";
      code = kExitVerify;
    }
  } catch (const JobError& e) {
    status = "parse_error", message = e.what(), code = kExitParse;
  } catch (const ParseError& e) {
    status = "parse_error", message = e.what(), code = kExitParse;
  } catch (const RingError& e) {
    status = "parse_error", message = e.what(), code = kExitParse;
  } catch (const std::invalid_argument& e) {
    status = "parse_error", message = e.what(), code = kExitParse;
  } catch (const BudgetExceeded& e) {
    status = "budget_exceeded", message = e.what(), code = kExitBudget;
  } catch (const VerificationFailure& e) {
    status = "verification_failed", message = e.what(), code = kExitVerify;
  } catch (const NoBFunction& e) {
    status = "no_b_function", message = e.what(), code = kExitOk;
  }
  doc["status"] = status;
  doc["exit_code"] = code;
  if (!message.empty()) doc["message"] = message;
  doc["result"] = result_;
  if (!checks_.empty()) doc["checks"] = checks_;
  Json b = Json::object();
  b["seconds"] = job_.budget_seconds;
  b["max_steps"] = job_.max_steps;
  b["exceeded"] = code == kExitBudget;
  doc["budget"] = b;
  if (job_.timing)
    doc["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  Report rep;
  rep.exit_code = code;
  if (job_.format == "json") {
    rep.output = doc.dump(2) + "\n";
    return rep;
  }
  std::ostringstream os;
  auto scalar = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s = "<";
      for (std::size_t i = 0; i < v.size(); ++i) {
        std::string item;
        if (v[i].is_string())
          item = v[i].get<std::string>();
        else if (v[i].contains("value"))
          item = v[i]["value"].get<std::string>() + (v[i]["multiplicity"] == 1 ? "" : "^" + v[i]["multiplicity"].dump());
        else
          item = v[i].dump();
        s += (i ? ", " : "") + item;
      }
      return s + ">";
    }
    return v.dump();
  };
  if (doc.contains("name")) os << "name: " << doc["name"].get<std::string>() << "\n";
  os << "command: " << job_.command << "\n";
  os << "status: " << status << "\n";
  if (!message.empty()) os << "message: " << message << "\n";
  for (const auto& [k, v] : result_.items()) {
    if (v.is_object()) {
      if (v["zero"].get<bool>()) {
        os << k << ": 0\n";
      } else if (v.contains("annihilator")) {
        os << k << ": D/" << scalar(v["annihilator"]) << " on " << v["generator"].get<std::string>()
           << " (dim " << v["dimension"].dump() << ", mult " << v["multiplicity"].dump() << ")\n";
      } else {
        os << k << ": D^" << v["rank"].dump() << "/" << scalar(v["relations"]) << " (dim " << v["dimension"].dump()
           << ", mult " << v["multiplicity"].dump() << ")\n";
      }
    } else if (k.size() > 9 && k.compare(k.size() - 9, 9, "_expanded") == 0) {
      continue;
    } else {
      os << k << ": " << scalar(v) << "\n";
    }
  }
  for (const auto& c : checks_)
    os << "check " << c["field"].get<std::string>() << ": " << (c["ok"].get<bool>() ? "ok" : "FAILED") << "\n";
  if (job_.timing) os << "wall_time_s: " << doc["wall_time_s"].dump() << "\n";
  rep.output = os.str();
  return rep;
}

}  // namespace

const std::vector<std::string>& job_commands() {
  static const std::vector<std::string> c{"gb", "ann-fs", "bfun", "localize", "lochom", "lambda-mod", "mult", "verify"};
  return c;
}

Job parse_job(std::string_view text) {
  Job job;
  std::istringstream in{std::string(text)};
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) throw JobError("line " + std::to_string(lineno) + ": expected 'key: value'");
    std::string key = trim(line.substr(0, colon)), value = trim(line.substr(colon + 1));
    if (key == "command")
      job.command = value;
    else if (key == "ring")
      job.ring = parse_name_list(value);
    else if (key == "ideal")
      job.ideal = value;
    else if (key == "f")
      job.f = value;
    else if (key == "lambda")
      job.lambda = value;
    else if (key == "order")
      job.order = value;
    else if (key == "format")
      job.format = value;
    else if (key == "budget")
      job.budget_seconds = parse_double(key, value);
    else if (key == "max-steps")
      job.max_steps = static_cast<std::size_t>(parse_double(key, value));
    else if (key == "timing")
      job.timing = parse_bool(key, value);
    else if (key == "name")
      job.name = value;
    else if (key.rfind("expect.", 0) == 0)
      job.expect.emplace_back(key.substr(7), value);
    else
      throw JobError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
  }
  return job;
}

Job load_job_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw JobError("cannot read job file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  Job j = parse_job(ss.str());
  if (j.name.empty()) j.name = path;
  return j;
}

void validate(const Job& job) {
  const auto& cmds = job_commands();
  if (std::find(cmds.begin(), cmds.end(), job.command) == cmds.end())
    throw JobError("unknown command '" + job.command + "'");
  if (job.ring.empty()) throw JobError("missing ring");
  const bool needs_f = job.command != "gb" && job.command != "mult";
  if (needs_f && job.f.empty()) throw JobError("command '" + job.command + "' needs f");
  if (!needs_f && !job.f.empty()) throw JobError("command '" + job.command + "' takes no f");
  if ((job.command == "lambda-mod") != !job.lambda.empty())
    throw JobError(job.command == "lambda-mod" ? "lambda-mod needs lambda" : "lambda is only used by lambda-mod");
  if (job.format != "text" && job.format != "json") throw JobError("format must be text or json");
  if (job.command == "gb" && job.ideal.empty()) throw JobError("gb needs a nonzero ideal");
}

Report run(const Job& job) { return Run(job).execute(); }

}  // namespace dmod
