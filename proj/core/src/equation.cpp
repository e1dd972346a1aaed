#include "kdv5/equation.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "kdv5/errors.hpp"

namespace kdv5 {

Coefficient::Coefficient() : Coefficient(Expr()) {}

Coefficient::Coefficient(Expr source) : source_(std::move(source)) {
  if (source_->depends_on(Var::x))
    throw ValidationError("coefficient must be univariate in t: `" + to_string(*source_) + "`");
  auto value_prog = std::make_shared<CompiledExpr>(*source_);
  auto deriv_prog = std::make_shared<CompiledExpr>(differentiate(*source_, Var::t));
  value_ = [value_prog](double t) { return (*value_prog)(t, 0.0); };
  deriv_ = [deriv_prog](double t) { return (*deriv_prog)(t, 0.0); };
}

Coefficient Coefficient::from_scalar_fn(ScalarFn fn) {
  Coefficient c;
  c.source_.reset();
  c.value_ = fn.value;
  c.deriv_ = fn.d1;
  return c;
}

namespace {

void check_nonvanishing(const Coefficient& c, const Interval& domain, const char* name) {
  for (double t : uniform_grid(domain, EquationInstance::kValidationPoints)) {
    double v = c.value(t);
    if (!std::isfinite(v) || std::abs(v) <= EquationInstance::kVanishTol)
      throw ValidationError(std::string(name) + "(t) must not vanish on the domain; |" + name +
                            "(" + std::to_string(t) + ")| = " + std::to_string(std::abs(v)));
  }
}

}  // namespace

EquationInstance::EquationInstance(Coefficient a, Coefficient b, Coefficient c, Coefficient e,
                                   Coefficient f, Coefficient q, Interval t_domain)
    : a_(std::move(a)),
      b_(std::move(b)),
      c_(std::move(c)),
      e_(std::move(e)),
      f_(std::move(f)),
      q_(std::move(q)),
      domain_(t_domain) {
  check_nonvanishing(a_, domain_, "A");
  check_nonvanishing(c_, domain_, "C");
}

bool EquationInstance::damping_free(double tol) const {
  if (q_.symbolically_zero()) return true;
  for (double t : uniform_grid(domain_, kValidationPoints))
    if (std::abs(q_.value(t)) > tol) return false;
  return true;
}

namespace {

nlohmann::json parse_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ValidationError("malformed JSON equation spec");
  return j;
}

}  // namespace

EquationInstance equation_from_json(const std::string& json_text) {
  nlohmann::json j = parse_json(json_text);
  if (!j.contains("coefficients") || !j["coefficients"].is_object())
    throw ValidationError("equation spec needs a \"coefficients\" object");
  if (!j.contains("domain") || !j["domain"].is_array() || j["domain"].size() != 2)
    throw ValidationError("equation spec needs \"domain\": [t_lo, t_hi]");
  const auto& co = j["coefficients"];
  auto coefficient = [&co](const char* name, const char* fallback) {
    std::string text;
    if (co.contains(name)) {
      if (!co[name].is_string())
        throw ValidationError(std::string("coefficient ") + name + " must be an expression string");
      text = co[name].get<std::string>();
    } else if (fallback) {
      text = fallback;
    } else {
      throw ValidationError(std::string("equation spec is missing coefficient ") + name);
    }
    return Coefficient(parse(text));
  };
  Interval domain(j["domain"][0].get<double>(), j["domain"][1].get<double>());
  return EquationInstance(coefficient("A", nullptr), coefficient("B", nullptr),
                          coefficient("C", nullptr), coefficient("E", nullptr),
                          coefficient("F", nullptr), coefficient("Q", "0"), domain);
}

EquationInstance equation_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open equation file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return equation_from_json(buf.str());
}

std::string equation_to_json(const EquationInstance& eq) {
  auto source_or_throw = [](const Coefficient& c, const char* name) {
    if (!c.source())
      throw ValidationError(std::string("coefficient ") + name +
                            " has no expression form; cannot serialize");
    return to_string(*c.source());
  };
  nlohmann::ordered_json j;
  j["coefficients"]["A"] = source_or_throw(eq.A(), "A");
  j["coefficients"]["B"] = source_or_throw(eq.B(), "B");
  j["coefficients"]["C"] = source_or_throw(eq.C(), "C");
  j["coefficients"]["E"] = source_or_throw(eq.E(), "E");
  j["coefficients"]["F"] = source_or_throw(eq.F(), "F");
  j["coefficients"]["Q"] = source_or_throw(eq.Q(), "Q");
  j["domain"] = {eq.t_domain().lo, eq.t_domain().hi};
  return j.dump(2);
}

}  // namespace kdv5
