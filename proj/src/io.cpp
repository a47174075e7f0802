#include "qcs/io.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>

namespace qcs {
namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  return in;
}

int checked_length(const json& doc, const char* what) {
  if (!doc.contains("L") || !doc["L"].is_number_integer())
    throw std::runtime_error(std::string(what) + ": missing integer field L");
  const int L = doc["L"].get<int>();
  if (L < 1 || L > kMaxQubits)
    throw std::runtime_error(std::string(what) + ": L out of range");
  return L;
}

}  // namespace

json circuit_to_json(const Circuit& circuit) {
  json gates = json::array();
  for (const Gate& g : circuit.gates) {
    json re = json::array(), im = json::array();
    for (const cplx& v : g.matrix) {
      re.push_back(v.real());
      im.push_back(v.imag());
    }
    gates.push_back(
        {{"qubits", g.loci}, {"re", std::move(re)}, {"im", std::move(im)}});
  }
  return {{"L", circuit.n_qubits},
          {"gates", std::move(gates)},
          {"sweep_order", circuit.sweep_order}};
}

Circuit circuit_from_json(const json& doc) {
  Circuit circuit;
  circuit.n_qubits = checked_length(doc, "circuit");
  for (const json& jg : doc.value("gates", json::array())) {
    Gate g;
    g.loci = jg.at("qubits").get<std::vector<int>>();
    const auto re = jg.at("re").get<std::vector<double>>();
    const auto im = jg.at("im").get<std::vector<double>>();
    const std::size_t want = g.dim() * g.dim();
    if (re.size() != want || im.size() != want)
      throw std::runtime_error("circuit: gate matrix size mismatch");
    g.matrix.resize(want);
    for (std::size_t i = 0; i < want; ++i) g.matrix[i] = {re[i], im[i]};
    circuit.gates.push_back(std::move(g));
  }
  if (doc.contains("sweep_order")) {
    circuit.sweep_order = doc["sweep_order"].get<std::vector<int>>();
    if (circuit.sweep_order.size() != circuit.gates.size())
      throw std::runtime_error("circuit: sweep_order length mismatch");
    for (int idx : circuit.sweep_order)
      if (idx < 0 || idx >= circuit.size())
        throw std::runtime_error("circuit: sweep_order index out of range");
  } else {
    circuit.sweep_order.resize(circuit.gates.size());
    std::iota(circuit.sweep_order.begin(), circuit.sweep_order.end(), 0);
  }
  return circuit;
}

void save_circuit(const Circuit& circuit, const std::string& path) {
  save_json(circuit_to_json(circuit), path);
}

Circuit load_circuit(const std::string& path) {
  return circuit_from_json(load_json(path));
}

json state_to_json(const StateVector& state) {
  json amp = json::array();
  for (const cplx& v : state.amp) amp.push_back({v.real(), v.imag()});
  return {{"L", state.n_qubits}, {"amp", std::move(amp)}};
}

StateVector state_from_json(const json& doc) {
  StateVector state(checked_length(doc, "state"));
  const json& amp = doc.at("amp");
  if (amp.size() != state.amp.size())
    throw std::runtime_error("state: amplitude count does not match L");
  for (std::size_t i = 0; i < state.amp.size(); ++i)
    state.amp[i] = {amp[i].at(0).get<double>(), amp[i].at(1).get<double>()};
  return state;
}

void save_state(const StateVector& state, const std::string& path) {
  save_json(state_to_json(state), path);
}

StateVector load_state(const std::string& path) {
  return state_from_json(load_json(path));
}

void save_json(const json& doc, const std::string& path) {
  auto out = open_out(path);
  out << doc.dump(2) << '\n';
  if (!out) throw std::runtime_error("write failed: " + path);
}

json load_json(const std::string& path) {
  auto in = open_in(path);
  return json::parse(in);
}

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_csv(const Csv& table, const std::string& path) {
  auto out = open_out(path);
  for (std::size_t i = 0; i < table.header.size(); ++i)
    out << (i ? "," : "") << table.header[i];
  out << '\n';
  for (const auto& row : table.rows) {
    if (row.size() != table.header.size())
      throw std::runtime_error("csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i)
      out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace qcs
