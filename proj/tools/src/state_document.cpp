#include "mixent_cli/state_document.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace mixent::cli {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& where, const std::string& what) {
  throw DocumentError(where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) schema_error(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema_error(where, std::string("missing field \"") + key + "\"");
  return *it;
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) schema_error(where, "expected a number");
  return j.get<double>();
}

const json& array(const json& j, std::size_t size, const std::string& where) {
  if (!j.is_array()) schema_error(where, "expected an array");
  if (size != 0 && j.size() != size) schema_error(where, "expected " + std::to_string(size) + " entries");
  return j;
}

Complex complex_number(const json& j, const std::string& where) {
  const json& pair = array(j, 2, where);
  return {number(pair[0], where + "[0]"), number(pair[1], where + "[1]")};
}

std::array<Complex, 4> amplitudes(const json& j, const std::string& where) {
  const json& a = array(j, 4, where);
  std::array<Complex, 4> out;
  for (std::size_t i = 0; i < 4; ++i) out[i] = complex_number(a[i], where + "[" + std::to_string(i) + "]");
  return out;
}

std::vector<SubspaceMember> subspace_members(const json& j, const std::string& where) {
  std::vector<SubspaceMember> out;
  for (std::size_t i = 0; i < array(j, 0, where).size(); ++i) {
    const std::string at = where + "[" + std::to_string(i) + "]";
    const json& m = j[i];
    out.push_back({number(field(m, "weight", at), at + ".weight"), number(field(m, "c1", at), at + ".c1"),
                   number(field(m, "c2", at), at + ".c2"), number(field(m, "phase", at), at + ".phase")});
  }
  return out;
}

Subspace subspace_of(const json& j, const std::string& where) {
  if (j == "parallel") return Subspace::Parallel;
  if (j == "antiparallel") return Subspace::Antiparallel;
  schema_error(where, "expected \"parallel\" or \"antiparallel\"");
}

AnyState from_json(const json& doc) {
  const json& kind = field(doc, "kind", "document");
  if (kind == "pure") return PureState::from_amplitudes(amplitudes(field(doc, "amplitudes", "document"), "amplitudes"));
  if (kind == "ensemble") {
    const json& members = array(field(doc, "members", "document"), 0, "members");
    std::vector<EnsembleMember> out;
    for (std::size_t i = 0; i < members.size(); ++i) {
      const std::string at = "members[" + std::to_string(i) + "]";
      const double w = number(field(members[i], "weight", at), at + ".weight");
      out.push_back({w, PureState::from_amplitudes(amplitudes(field(members[i], "amplitudes", at), at + ".amplitudes"))});
    }
    return Ensemble::from_members(std::move(out));
  }
  if (kind == "rank2") {
    return StructuredRank2::make_standalone(subspace_of(field(doc, "subspace", "document"), "subspace"),
                                            subspace_members(field(doc, "members", "document"), "members"));
  }
  if (kind == "rank4") {
    return StructuredRank4::make(
        StructuredRank2::make(Subspace::Parallel, subspace_members(field(doc, "parallel", "document"), "parallel")),
        StructuredRank2::make(Subspace::Antiparallel,
                              subspace_members(field(doc, "antiparallel", "document"), "antiparallel")));
  }
  if (kind == "dense") {
    const json& rows = array(field(doc, "matrix", "document"), 4, "matrix");
    ComplexMat4 m;
    for (std::size_t r = 0; r < 4; ++r) {
      const std::string at = "matrix[" + std::to_string(r) + "]";
      const auto row = amplitudes(rows[r], at);
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = row[c];
    }
    return DensityMatrix::from_matrix(m);
  }
  schema_error("kind", "expected one of pure, ensemble, rank2, rank4, dense");
}

json pair(const Complex& z) { return json::array({z.real(), z.imag()}); }

json amplitudes_json(const PureState& s) {
  json out = json::array();
  for (const auto& a : s.amplitudes()) out.push_back(pair(a));
  return out;
}

json members_json(const StructuredRank2& r) {
  json out = json::array();
  for (const auto& m : r.members()) {
    out.push_back({{"weight", m.weight}, {"c1", m.c1}, {"c2", m.c2}, {"phase", m.phase}});
  }
  return out;
}

struct ToJson {
  json operator()(const PureState& s) const { return {{"kind", "pure"}, {"amplitudes", amplitudes_json(s)}}; }
  json operator()(const Ensemble& e) const {
    json members = json::array();
    for (const auto& m : e.members()) members.push_back({{"weight", m.weight}, {"amplitudes", amplitudes_json(m.state)}});
    return {{"kind", "ensemble"}, {"members", members}};
  }
  json operator()(const StructuredRank2& r) const {
    return {{"kind", "rank2"},
            {"subspace", r.subspace() == Subspace::Parallel ? "parallel" : "antiparallel"},
            {"members", members_json(r)}};
  }
  json operator()(const StructuredRank4& r) const {
    return {{"kind", "rank4"}, {"parallel", members_json(r.parallel())}, {"antiparallel", members_json(r.antiparallel())}};
  }
  json operator()(const DensityMatrix& rho) const {
    json rows = json::array();
    for (std::size_t r = 0; r < 4; ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < 4; ++c) row.push_back(pair(rho(r, c)));
      rows.push_back(row);
    }
    return {{"kind", "dense"}, {"matrix", rows}};
  }
};

// nlohmann reports a byte offset; turn it into 1-based line and column.
std::string position(std::string_view text, std::size_t byte) {
  byte = std::min(byte == 0 ? 0 : byte - 1, text.size());
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

}  // namespace

AnyState parse_state_document(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::string what = e.what();
    if (auto colon = what.rfind(": "); colon != std::string::npos) what = what.substr(colon + 2);
    throw DocumentError("syntax error at " + position(text, e.byte) + ": " + what);
  }
  return from_json(doc);
}

AnyState load_state_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DocumentError("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_state_document(buffer.str());
}

std::string serialize(const AnyState& value) {
  return std::visit(ToJson{}, value).dump(2) + "\n";
}

std::string_view kind_name(const AnyState& value) {
  static constexpr std::string_view names[] = {"pure", "ensemble", "rank2", "rank4", "dense"};
  return names[value.index()];
}

DensityMatrix density_of(const AnyState& value) {
  struct Visitor {
    DensityMatrix operator()(const PureState& s) const { return density_of_pure(s); }
    DensityMatrix operator()(const Ensemble& e) const { return density_of_ensemble(e); }
    DensityMatrix operator()(const StructuredRank2& r) const { return structured_rank2_density(r, 0.0); }
    DensityMatrix operator()(const StructuredRank4& r) const { return structured_rank4_density(r, 0.0); }
    DensityMatrix operator()(const DensityMatrix& rho) const { return rho; }
  };
  return std::visit(Visitor{}, value);
}

}  // namespace mixent::cli
