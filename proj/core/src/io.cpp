#include "tnc/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "tnc/error.hpp"

namespace tnc {

namespace {

using nlohmann::json;

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw SchemaError(where, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw SchemaError(where + "/" + key, "missing required field");
  return *it;
}

long long require_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) throw SchemaError(where, "expected an integer");
  return j.get<long long>();
}

double require_real(const json& j, const std::string& where) {
  if (!j.is_number()) throw SchemaError(where, "expected a number");
  return j.get<double>();
}

}  // namespace

std::string save_tn(const TensorNetwork& tn, std::string_view config_json) {
  const Graph& g = tn.graph();
  std::ostringstream out;
  out << "{\n  \"version\": " << kDocumentVersion << ",\n";
  if (!config_json.empty()) out << "  \"config\": " << config_json << ",\n";
  out << "  \"bond_dim\": " << tn.bond_dim() << ",\n";
  out << "  \"num_vertices\": " << g.num_vertices() << ",\n";
  if (g.lattice()) out << "  \"lattice\": [" << g.lattice()->L1 << ", " << g.lattice()->L2 << "],\n";
  out << "  \"edges\": [";
  for (int e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    out << (e ? ",\n    " : "\n    ") << "[" << ed.a.vertex << ", " << ed.a.port << ", "
        << ed.b.vertex << ", " << ed.b.port << "]";
  }
  out << (g.num_edges() ? "\n  ],\n" : "],\n");
  out << "  \"tensors\": [";
  for (int v = 0; v < g.num_vertices(); ++v) {
    out << (v ? ",\n    " : "\n    ") << "{\"vertex\": " << v << ", \"entries\": [";
    const auto entries = tn.tensor(v).entries();
    for (std::size_t i = 0; i < entries.size(); ++i)
      out << (i ? ", " : "") << "[" << number(entries[i].real()) << ", "
          << number(entries[i].imag()) << "]";
    out << "]}";
  }
  out << (g.num_vertices() ? "\n  ]\n}\n" : "]\n}\n");
  return out.str();
}

TensorNetwork load_tn(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed document: ") + e.what());
  }
  if (!doc.is_object()) throw SchemaError("", "document must be an object");

  const long long version = require_int(require(doc, "version", ""), "/version");
  if (version != kDocumentVersion)
    throw SchemaError("/version", "unsupported version " + std::to_string(version));
  const long long d = require_int(require(doc, "bond_dim", ""), "/bond_dim");
  if (d < 1) throw SchemaError("/bond_dim", "must be positive");
  const long long n = require_int(require(doc, "num_vertices", ""), "/num_vertices");
  if (n < 0) throw SchemaError("/num_vertices", "must be nonnegative");

  std::optional<LatticeDims> lattice;
  if (auto it = doc.find("lattice"); it != doc.end()) {
    if (!it->is_array() || it->size() != 2) throw SchemaError("/lattice", "expected [L1, L2]");
    lattice = LatticeDims{static_cast<int>(require_int((*it)[0], "/lattice/0")),
                          static_cast<int>(require_int((*it)[1], "/lattice/1"))};
  }

  const json& jedges = require(doc, "edges", "");
  if (!jedges.is_array()) throw SchemaError("/edges", "expected an array");
  std::vector<Edge> edges;
  std::vector<int> degree(static_cast<std::size_t>(n), 0);
  std::map<std::pair<long long, long long>, std::string> seen;
  for (std::size_t e = 0; e < jedges.size(); ++e) {
    const std::string where = "/edges/" + std::to_string(e);
    const json& je = jedges[e];
    if (!je.is_array() || je.size() != 4) throw SchemaError(where, "expected [v, p, w, q]");
    long long f[4];
    for (int k = 0; k < 4; ++k) f[k] = require_int(je[static_cast<std::size_t>(k)], where + "/" + std::to_string(k));
    for (int k = 0; k < 4; k += 2) {
      if (f[k] < 0 || f[k] >= n) throw SchemaError(where + "/" + std::to_string(k), "vertex out of range");
      if (f[k + 1] < 0) throw SchemaError(where + "/" + std::to_string(k + 1), "negative port");
      auto [it, fresh] = seen.emplace(std::make_pair(f[k], f[k + 1]), where);
      if (!fresh)
        throw SchemaError(where + "/" + std::to_string(k + 1),
                          "port " + std::to_string(f[k + 1]) + " of vertex " + std::to_string(f[k]) +
                              " already referenced at " + it->second);
      auto& deg = degree[static_cast<std::size_t>(f[k])];
      deg = std::max(deg, static_cast<int>(f[k + 1]) + 1);
    }
    edges.push_back({{static_cast<int>(f[0]), static_cast<int>(f[1])},
                     {static_cast<int>(f[2]), static_cast<int>(f[3])}});
  }
  for (long long v = 0; v < n; ++v)
    for (int p = 0; p < degree[static_cast<std::size_t>(v)]; ++p)
      if (!seen.count({v, p}))
        throw SchemaError("/edges", "vertex " + std::to_string(v) + " port " + std::to_string(p) +
                                        " is unused but a higher port is attached");

  const json& jtensors = require(doc, "tensors", "");
  if (!jtensors.is_array()) throw SchemaError("/tensors", "expected an array");
  std::vector<std::optional<Tensor>> slots(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < jtensors.size(); ++t) {
    const std::string where = "/tensors/" + std::to_string(t);
    const json& jt = jtensors[t];
    const long long v = require_int(require(jt, "vertex", where), where + "/vertex");
    if (v < 0 || v >= n) throw SchemaError(where + "/vertex", "vertex out of range");
    if (slots[static_cast<std::size_t>(v)])
      throw SchemaError(where + "/vertex", "duplicate tensor for vertex " + std::to_string(v));
    const json& je = require(jt, "entries", where);
    if (!je.is_array()) throw SchemaError(where + "/entries", "expected an array");
    const int rank = degree[static_cast<std::size_t>(v)];
    const std::size_t expect = tensor_size(rank, static_cast<int>(d));
    if (je.size() != expect)
      throw SchemaError(where + "/entries", "expected " + std::to_string(expect) +
                                                " entries for degree " + std::to_string(rank));
    std::vector<cplx> entries;
    entries.reserve(expect);
    for (std::size_t i = 0; i < je.size(); ++i) {
      const std::string ew = where + "/entries/" + std::to_string(i);
      if (!je[i].is_array() || je[i].size() != 2) throw SchemaError(ew, "expected [re, im]");
      entries.emplace_back(require_real(je[i][0], ew + "/0"), require_real(je[i][1], ew + "/1"));
    }
    slots[static_cast<std::size_t>(v)] = Tensor(rank, static_cast<int>(d), std::move(entries));
  }
  std::vector<Tensor> tensors;
  for (long long v = 0; v < n; ++v) {
    if (!slots[static_cast<std::size_t>(v)])
      throw SchemaError("/tensors", "missing tensor for vertex " + std::to_string(v));
    tensors.push_back(std::move(*slots[static_cast<std::size_t>(v)]));
  }
  try {
    return TensorNetwork(Graph(std::move(degree), std::move(edges), lattice), static_cast<int>(d),
                         std::move(tensors));
  } catch (const std::invalid_argument& e) {
    throw SchemaError("", e.what());
  }
}

void save_tn_file(const TensorNetwork& tn, const std::filesystem::path& path,
                  std::string_view config_json) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << save_tn(tn, config_json);
}

TensorNetwork load_tn_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_tn(buf.str());
}

}  // namespace tnc
