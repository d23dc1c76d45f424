#include "maxdecouple/json_io.hpp"

#include <algorithm>
#include <cstdio>

#include "json.hpp"

namespace maxdecouple {

namespace {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

std::size_t line_of(std::string_view text, std::size_t byte) {
  byte = std::min(byte, text.size());
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

Json parse_document(std::string_view text) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw ParseError("line " + std::to_string(line_of(text, e.byte)) + ": malformed JSON (" +
                     e.what() + ")");
  }
}

const Json& field(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

double number(const Json& v, const std::string& where) {
  if (!v.is_number()) throw ParseError(where + ": expected a number");
  return v.get<double>();
}

unsigned variable_count(const Json& doc) {
  const Json& n = field(doc, "n", "document");
  if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0 || n.get<std::uint64_t>() > 1u << 20) {
    throw ParseError("field 'n': expected a positive integer");
  }
  return static_cast<unsigned>(n.get<std::uint64_t>());
}

const Json& atom_array(const Json& doc) {
  const Json& atoms = field(doc, "atoms", "document");
  if (!atoms.is_array()) throw ParseError("field 'atoms': expected an array");
  return atoms;
}

JointBernoulli bernoulli_from(const Json& doc) {
  const unsigned n = variable_count(doc);
  const Json& arr = atom_array(doc);
  std::vector<Atom> atoms;
  atoms.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "atoms[" + std::to_string(k) + "]";
    const Json& mask = field(arr[k], "mask", where);
    if (!mask.is_number_unsigned()) {
      throw ParseError(where + ".mask: expected a nonnegative integer");
    }
    atoms.push_back({mask.get<Mask>(), number(field(arr[k], "p", where), where + ".p")});
  }
  try {
    return JointBernoulli(n, std::move(atoms));
  } catch (const InvalidDistribution& e) {
    throw ParseError(std::string("invalid bernoulli-joint: ") + e.what());
  }
}

NonnegJoint nonneg_from(const Json& doc) {
  const unsigned n = variable_count(doc);
  const Json& arr = atom_array(doc);
  std::vector<ValueAtom> atoms;
  atoms.reserve(arr.size());
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const std::string where = "atoms[" + std::to_string(k) + "]";
    const Json& values = field(arr[k], "values", where);
    if (!values.is_array()) throw ParseError(where + ".values: expected an array");
    ValueAtom a;
    for (std::size_t i = 0; i < values.size(); ++i) {
      a.values.push_back(number(values[i], where + ".values[" + std::to_string(i) + "]"));
    }
    a.p = number(field(arr[k], "p", where), where + ".p");
    atoms.push_back(std::move(a));
  }
  try {
    return NonnegJoint(n, std::move(atoms));
  } catch (const InvalidDistribution& e) {
    throw ParseError(std::string("invalid nonneg-joint: ") + e.what());
  }
}

std::string csv_join(std::initializer_list<double> values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += format_real(v);
  }
  return out;
}

template <class Pairs>
std::string verdict_cell(const Pairs& pairs) {
  std::string out;
  for (const auto& [name, ok] : pairs) {
    if (!out.empty()) out += ';';
    out += name + '=' + (ok ? "1" : "0");
  }
  return out;
}

std::vector<std::pair<std::string, bool>> continuous_verdicts(const ContinuousReport& r) {
  return {{"layer_cake_agrees", r.layer_cake_agrees},
          {"upper_holds", r.upper_holds},
          {"pairwise_ok", r.pairwise_ok},
          {"lower_holds", r.lower_holds}};
}

}  // namespace

std::string format_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

AnyJoint parse_joint(std::string_view text) {
  const Json doc = parse_document(text);
  const Json& kind = field(doc, "kind", "document");
  if (!kind.is_string()) throw ParseError("field 'kind': expected a string");
  const auto k = kind.get<std::string>();
  if (k == "bernoulli-joint") return bernoulli_from(doc);
  if (k == "nonneg-joint") return nonneg_from(doc);
  throw ParseError("field 'kind': unknown kind '" + k +
                   "' (expected bernoulli-joint or nonneg-joint)");
}

JointBernoulli parse_bernoulli_joint(std::string_view text) {
  auto any = parse_joint(text);
  if (auto* j = std::get_if<JointBernoulli>(&any)) return std::move(*j);
  throw ParseError("field 'kind': expected bernoulli-joint");
}

std::string to_json(const JointBernoulli& j) {
  OrderedJson doc;
  doc["kind"] = "bernoulli-joint";
  doc["n"] = j.n();
  OrderedJson atoms = OrderedJson::array();
  for (const Atom& a : j.atoms()) atoms.push_back({{"mask", a.mask}, {"p", a.p}});
  doc["atoms"] = std::move(atoms);
  return doc.dump();
}

std::string to_json(const NonnegJoint& j) {
  OrderedJson doc;
  doc["kind"] = "nonneg-joint";
  doc["n"] = j.n();
  OrderedJson atoms = OrderedJson::array();
  for (const auto& a : j.atoms()) atoms.push_back({{"values", a.values}, {"p", a.p}});
  doc["atoms"] = std::move(atoms);
  return doc.dump();
}

std::string report_to_json(const BoundReport& r) {
  OrderedJson doc;
  doc["M"] = r.M;
  doc["M_tilde"] = r.Mtilde;
  doc["S"] = r.S;
  doc["P_prod"] = r.Pprod;
  doc["G"] = r.G;
  doc["F"] = r.F;
  doc["A"] = r.A;
  doc["B"] = r.B;
  doc["C"] = r.C;
  doc["H"] = r.H;
  doc["pz_lower"] = r.pz_lower;
  doc["pinelis_rhs"] = r.pinelis_rhs;
  doc["eta_lower"] = r.eta_lower;
  OrderedJson verdicts = OrderedJson::object();
  for (const auto& [name, ok] : r.verdicts.named()) verdicts[name] = ok;
  doc["verdicts"] = std::move(verdicts);
  return doc.dump(2);
}

std::string report_to_json(const ContinuousReport& r) {
  OrderedJson doc;
  doc["emax"] = r.emax;
  doc["emax_layer_cake"] = r.emax_layer_cake;
  doc["emax_ind"] = r.emax_ind;
  doc["upper_rhs"] = r.upper_rhs;
  doc["lower_rhs"] = r.lower_rhs;
  OrderedJson verdicts = OrderedJson::object();
  for (const auto& [name, ok] : continuous_verdicts(r)) verdicts[name] = ok;
  doc["verdicts"] = std::move(verdicts);
  return doc.dump(2);
}

std::string report_csv_header() {
  return "M,M_tilde,S,P_prod,G,F,A,B,C,H,pz_lower,pinelis_rhs,eta_lower,verdicts";
}

std::string report_csv_row(const BoundReport& r) {
  return csv_join({r.M, r.Mtilde, r.S, r.Pprod, r.G, r.F, r.A, r.B, r.C, r.H, r.pz_lower,
                   r.pinelis_rhs, r.eta_lower}) +
         ',' + verdict_cell(r.verdicts.named());
}

std::string continuous_csv_header() {
  return "emax,emax_layer_cake,emax_ind,upper_rhs,lower_rhs,verdicts";
}

std::string continuous_csv_row(const ContinuousReport& r) {
  return csv_join({r.emax, r.emax_layer_cake, r.emax_ind, r.upper_rhs, r.lower_rhs}) + ',' +
         verdict_cell(continuous_verdicts(r));
}

std::string sweep_csv_header() {
  return "n,p,mtilde,lp_objective,lp_ratio,construction_ratio,gap,status";
}

std::string sweep_csv_row(const SweepRow& row) {
  return std::to_string(row.n) + ',' +
         csv_join({row.p, row.mtilde, row.lp_objective, row.lp_ratio, row.construction_ratio,
                   row.gap}) +
         ',' + std::string(status_name(row.status));
}

}  // namespace maxdecouple
