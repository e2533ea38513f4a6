#include "stellar/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace stellar::io {

using nlohmann::json;

namespace {

json checked_parse(const std::string& text) {
  json j = json::parse(text);  // throws on malformed input
  if (!j.is_object() || j.value("schema", -1) != kSchemaVersion)
    throw std::invalid_argument("expected an object with \"schema\": 1");
  return j;
}

}  // namespace

SpinState parse_state(const std::string& text) {
  const json j = checked_parse(text);
  const Spin spin(j.at("twice_s").get<int>());
  const auto& amps = j.at("amplitudes");
  if (!amps.is_array() || static_cast<int>(amps.size()) != spin.dimension())
    throw std::invalid_argument("state file: amplitude count != 2S+1");
  VectorC v(spin.dimension());
  for (int k = 0; k < spin.dimension(); ++k) {
    const auto& pair = amps.at(static_cast<std::size_t>(k));
    if (!pair.is_array() || pair.size() != 2)
      throw std::invalid_argument("state file: amplitudes must be [re, im]");
    v[k] = Complex(pair.at(0).get<Real>(), pair.at(1).get<Real>());
  }
  return SpinState::normalized(spin, v);
}

Constellation parse_constellation(const std::string& text) {
  const json j = checked_parse(text);
  const Spin spin(j.at("twice_s").get<int>());
  const auto& pts = j.at("points");
  if (!pts.is_array())
    throw std::invalid_argument("constellation file: points must be a list");
  std::vector<BlochPoint> points;
  points.reserve(pts.size());
  for (const auto& p : pts)
    points.emplace_back(p.at("alpha").get<Real>(), p.at("beta").get<Real>());
  return Constellation(spin, std::move(points));
}

SpinState read_state(const std::string& path) {
  return parse_state(read_text_file(path));
}

Constellation read_constellation(const std::string& path) {
  return parse_constellation(read_text_file(path));
}

std::string state_text(const SpinState& s, Real self_check) {
  json amps = json::array();
  for (int k = 0; k < s.spin().dimension(); ++k)
    amps.push_back({s.amplitudes()[k].real(), s.amplitudes()[k].imag()});
  json j{{"schema", kSchemaVersion},
         {"twice_s", s.spin().twice()},
         {"amplitudes", amps}};
  if (self_check >= 0) j["round_trip_overlap"] = self_check;
  return j.dump(2) + "\n";
}

std::string constellation_text(const Constellation& c, Real self_check) {
  json pts = json::array();
  for (const BlochPoint& p : c.points)
    pts.push_back({{"alpha", p.alpha}, {"beta", p.beta}});
  json j{{"schema", kSchemaVersion},
         {"twice_s", c.spin.twice()},
         {"points", pts}};
  if (self_check >= 0) j["round_trip_overlap"] = self_check;
  return j.dump(2) + "\n";
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string equivalence_json(const std::vector<EquivalenceReport>& records) {
  json arr = json::array();
  bool all_pass = true;
  for (const EquivalenceReport& r : records) {
    arr.push_back({{"twice_s", r.twice_s},
                   {"twice_m", r.twice_m},
                   {"twice_m_prime", r.twice_m_prime},
                   {"alpha", r.alpha},
                   {"beta", r.beta},
                   {"lhs", r.lhs},
                   {"rhs", r.rhs},
                   {"delta", r.delta},
                   {"pass", r.pass}});
    all_pass = all_pass && r.pass;
  }
  const json j{{"schema", kSchemaVersion},
               {"records", arr},
               {"all_pass", all_pass}};
  return j.dump(2) + "\n";
}

std::string equivalence_csv(const std::vector<EquivalenceReport>& records) {
  std::ostringstream out;
  out.precision(17);
  out << "twice_s,twice_m,twice_m_prime,alpha,beta,lhs,rhs,delta,pass\n";
  for (const EquivalenceReport& r : records)
    out << r.twice_s << ',' << r.twice_m << ',' << r.twice_m_prime << ','
        << r.alpha << ',' << r.beta << ',' << r.lhs << ',' << r.rhs << ','
        << r.delta << ',' << (r.pass ? 1 : 0) << '\n';
  return out.str();
}

std::string simulation_json(const SimulationReport& r) {
  json j{{"schema", kSchemaVersion},
         {"mode", r.mode},
         {"twice_s", r.twice_s},
         {"alpha", r.alpha},
         {"beta", r.beta},
         {"trials", r.trials},
         {"seed", r.seed},
         {"max_abs_deviation", r.max_abs_deviation}};
  if (r.coherent_input) {
    j["initial"] = {{"type", "coherent"}, {"twice_m", r.twice_m}};
  } else {
    json amps = json::array();
    for (Eigen::Index k = 0; k < r.amplitudes.size(); ++k)
      amps.push_back({r.amplitudes[k].real(), r.amplitudes[k].imag()});
    j["initial"] = {{"type", "state"}, {"amplitudes", amps}};
  }
  json tm = json::array(), hist = json::array(), exact = json::array();
  for (std::size_t k = 0; k < r.histogram.size(); ++k) {
    tm.push_back(2 * static_cast<int>(k) - r.twice_s);
    hist.push_back(r.histogram[k]);
    exact.push_back(r.exact[k]);
  }
  j["twice_m_prime"] = tm;
  j["histogram"] = hist;
  j["exact"] = exact;
  if (r.mode == "classical") j["lambda_draws"] = r.lambda_draws;
  return j.dump(2) + "\n";
}

std::string simulation_csv(const SimulationReport& r) {
  std::ostringstream out;
  out.precision(17);
  out << "twice_m_prime,count,frequency,exact\n";
  for (std::size_t k = 0; k < r.histogram.size(); ++k)
    out << 2 * static_cast<int>(k) - r.twice_s << ',' << r.histogram[k] << ','
        << static_cast<Real>(r.histogram[k]) / static_cast<Real>(r.trials)
        << ',' << r.exact[k] << '\n';
  return out.str();
}

}  // namespace stellar::io
