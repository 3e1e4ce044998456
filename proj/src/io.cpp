#include "cascadelab/io.hpp"

#include <fstream>
#include <sstream>

#include "cascadelab/types.hpp"

namespace casclab {

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    out += c;
    if (c == '"') out += '"';
  }
  out += '"';
  return out;
}

std::string csv_document(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream out;
  out << "# schema " << kSchemaVersion << "\n";
  auto emit = [&out](const std::vector<std::string>& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_escape(row[i]);
    }
    out << '\n';
  };
  emit(header);
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw PreconditionViolation("csv row width does not match the header");
    emit(row);
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionViolation("cannot open for writing: " + path);
  f << content;
  if (!f) throw PreconditionViolation("short write: " + path);
}

std::string json_document(const Json& j) { return j.dump(2) + "\n"; }

Json state_to_json(const GalerkinState& state) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["time"] = state.time;
  Json modes = Json::array();
  for (std::size_t i = 0; i < state.support.size(); ++i) {
    Json m;
    m["n"] = {state.support[i][0], state.support[i][1]};
    m["re"] = state.amplitudes[i].real();
    m["im"] = state.amplitudes[i].imag();
    modes.push_back(std::move(m));
  }
  j["modes"] = std::move(modes);
  return j;
}

GalerkinState state_from_json(const Json& j) {
  GalerkinState s;
  s.time = j.value("time", 0.0);
  for (const Json& m : j.at("modes")) {
    s.support.push_back(
        {m.at("n").at(0).get<long long>(), m.at("n").at(1).get<long long>()});
    s.amplitudes.push_back(
        {m.at("re").get<double>(), m.at("im").get<double>()});
  }
  return s;
}

Json lambda_to_json(const LambdaSet& lambda) {
  Json j;
  j["schema"] = kSchemaVersion;
  Json gens = Json::array();
  for (const auto& gen : lambda.generations) {
    Json g = Json::array();
    for (int idx : gen)
      g.push_back({lambda.points[idx][0], lambda.points[idx][1]});
    gens.push_back(std::move(g));
  }
  j["generations"] = std::move(gens);
  Json points = Json::array();
  for (const auto& p : lambda.points) points.push_back({p[0], p[1]});
  j["points"] = std::move(points);
  Json fams = Json::array();
  for (const auto& fam : lambda.families) {
    Json f;
    f["n"] = {fam.n[0], fam.n[1], fam.n[2], fam.n[3]};
    f["generation"] = fam.generation;
    fams.push_back(std::move(f));
  }
  j["families"] = std::move(fams);
  Json links = Json::array();
  for (const auto& ln : lambda.links) {
    Json l;
    l["spouse"] = ln.spouse;
    l["sibling"] = ln.sibling;
    l["parents"] = {ln.parents[0], ln.parents[1]};
    l["children"] = {ln.children[0], ln.children[1]};
    links.push_back(std::move(l));
  }
  j["links"] = std::move(links);
  return j;
}

LambdaSet lambda_from_json(const Json& j) {
  LambdaSet L;
  for (const Json& p : j.at("points"))
    L.points.push_back({p.at(0).get<long long>(), p.at(1).get<long long>()});
  std::map<LatticePoint, int> where;
  for (int i = 0; i < static_cast<int>(L.points.size()); ++i)
    where[L.points[i]] = i;
  for (const Json& gen : j.at("generations")) {
    std::vector<int> g;
    for (const Json& p : gen)
      g.push_back(
          where.at({p.at(0).get<long long>(), p.at(1).get<long long>()}));
    L.generations.push_back(std::move(g));
  }
  for (const Json& f : j.at("families")) {
    LambdaSet::Family fam;
    for (int k = 0; k < 4; ++k) fam.n[k] = f.at("n").at(k).get<int>();
    fam.generation = f.at("generation").get<int>();
    L.families.push_back(fam);
  }
  for (const Json& l : j.at("links")) {
    LambdaSet::Links ln;
    ln.spouse = l.at("spouse").get<int>();
    ln.sibling = l.at("sibling").get<int>();
    for (int k = 0; k < 2; ++k) {
      ln.parents[k] = l.at("parents").at(k).get<int>();
      ln.children[k] = l.at("children").at(k).get<int>();
    }
    L.links.push_back(ln);
  }
  if (L.links.size() != L.points.size())
    throw PreconditionViolation("lambda json: links do not match points");
  return L;
}

namespace {

Json rectangles_to_json(const std::vector<Rectangle>& rects) {
  Json out = Json::array();
  for (const Rectangle& r : rects) {
    Json q = Json::array();
    for (const LatticePoint& p : r) q.push_back({p[0], p[1]});
    out.push_back(std::move(q));
  }
  return out;
}

Json points_to_json(const std::vector<LatticePoint>& pts) {
  Json out = Json::array();
  for (const LatticePoint& p : pts) out.push_back({p[0], p[1]});
  return out;
}

}  // namespace

Json verdict_to_json(const VerificationVerdict& v) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["closure"] = v.closure;
  j["spouse_children"] = v.spouse_children;
  j["sibling_parents"] = v.sibling_parents;
  j["nondegeneracy"] = v.nondegeneracy;
  j["faithfulness"] = v.faithfulness;
  j["no_spreading"] = v.no_spreading;
  j["all"] = v.all();
  Json w;
  w["closure"] = rectangles_to_json(v.closure_witnesses);
  w["links"] = points_to_json(v.link_witnesses);
  w["faithfulness"] = rectangles_to_json(v.faithfulness_witnesses);
  w["spreading_points"] = points_to_json(v.spreading_witnesses);
  w["spreading_rectangles"] = rectangles_to_json(v.spreading_rectangles);
  j["witnesses"] = std::move(w);
  return j;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

Config parse_config(const std::string& text) {
  Config cfg;
  std::string section;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']')
        throw PreconditionViolation("config line " + std::to_string(line_no) +
                                    ": unterminated section header");
      section = trim(t.substr(1, t.size() - 2));
      cfg[section];
      continue;
    }
    const std::size_t eq = t.find('=');
    if (eq == std::string::npos)
      throw PreconditionViolation("config line " + std::to_string(line_no) +
                                  ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw PreconditionViolation("config line " + std::to_string(line_no) +
                                  ": empty key");
    cfg[section][key] = value;
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionViolation("cannot open config: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return parse_config(buf.str());
}

}  // namespace casclab
