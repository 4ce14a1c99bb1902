#include "fkdet/rep_file.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fkdet/errors.hpp"

namespace fkdet {

namespace {

using nlohmann::json;

std::complex<double> parse_entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ValidationError("matrix entry must be a [re, im] pair of numbers");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

Mat2 parse_matrix(const json& m) {
  if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() ||
      m[0].size() != 2 || m[1].size() != 2) {
    throw ValidationError("generator must be a 2x2 matrix given as two rows");
  }
  Mat2 out;
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) out(r, c) = parse_entry(m[r][c]);
  }
  return out;
}

}  // namespace

RepFile parse_rep(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("representation file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("representation file must be a JSON object");

  RepFile out;
  try {
    out.name = doc.value("name", std::string{});
    if (!doc.contains("rank")) throw ValidationError("representation file lacks 'rank'");
    out.data.rank = doc.at("rank").get<int>();
    out.data.projective = doc.value("projective", true);
    out.data.epsilon_id = doc.value("epsilon_id", 1e-8);
    if (!doc.contains("generators") || !doc.at("generators").is_array()) {
      throw ValidationError("representation file lacks a 'generators' list");
    }
    for (const auto& g : doc.at("generators")) out.data.generators.push_back(parse_matrix(g));
    if (doc.contains("relators")) {
      for (const auto& r : doc.at("relators")) {
        const auto letters = r.get<std::vector<int>>();
        out.data.relators.push_back(Word::from_signed(letters));
      }
    }
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed representation file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ValidationError(std::string("malformed relator: ") + e.what());
  }
  return out;
}

RepFile read_rep_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open representation file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rep(buf.str());
}

GroupSpec load_rep_group(const std::filesystem::path& path) {
  RepFile rep = read_rep_file(path);
  return GroupSpec::matrix_rep(std::move(rep.data), rep.name);
}

std::string dump_rep(const RepFile& rep) {
  json doc;
  doc["name"] = rep.name;
  doc["rank"] = rep.data.rank;
  doc["projective"] = rep.data.projective;
  doc["epsilon_id"] = rep.data.epsilon_id;
  json gens = json::array();
  for (const Mat2& m : rep.data.generators) {
    json rows = json::array();
    for (int r = 0; r < 2; ++r) {
      json row = json::array();
      for (int c = 0; c < 2; ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
      rows.push_back(row);
    }
    gens.push_back(rows);
  }
  doc["generators"] = gens;
  json rels = json::array();
  for (const Word& w : rep.data.relators) rels.push_back(w.to_signed());
  doc["relators"] = rels;
  return doc.dump(2);
}

}  // namespace fkdet
