// Copyright 2026 The SNC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "snc/world.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

namespace snc {

namespace {

using nlohmann::json;

bool row_has_mass(const Matrix& m, Index row) {
  return (m.row(row).array() > 0.0).any();
}

std::string row_label(Index row) { return "row " + std::to_string(row); }

}  // namespace

RelevanceModel::RelevanceModel(Matrix p_true) : p_(std::move(p_true)) {
  if (p_.rows() < 1 || p_.cols() < 1) {
    throw Error(Errc::kInvalidParams, "relevance model needs at least one action and concept");
  }
  for (Index a = 0; a < p_.rows(); ++a) {
    for (Index c = 0; c < p_.cols(); ++c) {
      const double v = p_(a, c);
      if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(Errc::kOutOfRange, "relevance " + row_label(a) + ", column " +
                                           std::to_string(c) + " = " +
                                           std::to_string(v) + " outside [0, 1]");
      }
    }
    if (!row_has_mass(p_, a)) {
      throw Error(Errc::kAllZero, "relevance " + row_label(a) + " has no positive entry");
    }
  }
}

SymbolTable::SymbolTable(std::vector<SymbolId> to_symbol)
    : to_symbol_(std::move(to_symbol)), from_symbol_(to_symbol_.size()) {
  std::vector<bool> seen(to_symbol_.size(), false);
  for (std::size_t c = 0; c < to_symbol_.size(); ++c) {
    const std::size_t s = index(to_symbol_[c]);
    if (s >= to_symbol_.size() || seen[s]) {
      throw Error(Errc::kSchema, "symbol table is not a bijection at concept " +
                                     std::to_string(c));
    }
    seen[s] = true;
    from_symbol_[s] = ConceptId{c};
  }
}

SymbolTable SymbolTable::identity(Index n) {
  std::vector<SymbolId> ids(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = SymbolId{i};
  return SymbolTable(std::move(ids));
}

SymbolId SymbolTable::symbol(ConceptId c) const {
  if (index(c) >= to_symbol_.size()) {
    throw Error(Errc::kUnknownConcept, "concept " + std::to_string(index(c)));
  }
  return to_symbol_[index(c)];
}

ConceptId SymbolTable::concept_of(SymbolId s) const {
  if (index(s) >= from_symbol_.size()) {
    throw Error(Errc::kUnknownSymbol, "symbol " + std::to_string(index(s)));
  }
  return from_symbol_[index(s)];
}

WorldInstance gen_world(Index num_actions, Index num_concepts, BetaPair beta,
                        Rng& rng) {
  if (num_actions < 1 || num_concepts < 1) {
    throw Error(Errc::kInvalidParams, "world dimensions must be positive");
  }
  if (!(beta.a > 0.0) || !(beta.b > 0.0)) {
    throw Error(Errc::kInvalidParams, "Beta parameters must be positive");
  }
  Matrix p(num_actions, num_concepts);
  for (Index a = 0; a < num_actions; ++a) {
    do {
      for (Index c = 0; c < num_concepts; ++c) p(a, c) = rng.beta(beta.a, beta.b);
    } while (!row_has_mass(p, a));
  }
  World world{num_actions, num_concepts, Dist::uniform(num_actions),
              Dist::uniform(num_concepts), SymbolTable::identity(num_concepts)};
  return {std::move(world), {AgentProfile{"t0", RelevanceModel(std::move(p))}}};
}

WorldInstance rabbit_fixture() {
  Matrix p(3, 3);
  // columns: rabbit, jumping, ring
  p << 1, 0, 0,
       1, 1, 0,
       1, 1, 1;
  World world{3, 3, Dist::uniform(3), Dist::uniform(3), SymbolTable::identity(3)};
  return {std::move(world), {AgentProfile{"rabbit", RelevanceModel(std::move(p))}}};
}

RelevanceModel perturb_model(const RelevanceModel& m, double epsilon, Rng& rng) {
  if (!(epsilon >= 0.0)) throw Error(Errc::kInvalidParams, "epsilon must be nonnegative");
  Matrix p = m.p_true();
  for (Index a = 0; a < p.rows(); ++a) {
    do {
      for (Index c = 0; c < p.cols(); ++c) {
        const double shifted = m.p_true()(a, c) + rng.uniform(-epsilon, epsilon);
        p(a, c) = std::clamp(shifted, 0.0, 1.0);
      }
    } while (!row_has_mass(p, a));
  }
  return RelevanceModel(std::move(p));
}

RelevanceModel quantize_model(const RelevanceModel& m, double step) {
  if (!(step > 0.0 && step <= 1.0)) {
    throw Error(Errc::kInvalidStep, "quantization step must lie in (0, 1]");
  }
  const Matrix& src = m.p_true();
  Matrix p(src.rows(), src.cols());
  for (Index a = 0; a < src.rows(); ++a) {
    for (Index c = 0; c < src.cols(); ++c) {
      const double q = std::floor(src(a, c) / step + 0.5) * step;
      p(a, c) = std::clamp(q, 0.0, 1.0);
    }
    if (!row_has_mass(p, a)) {
      Index best;
      src.row(a).maxCoeff(&best);
      p(a, best) = step;
    }
  }
  return RelevanceModel(std::move(p));
}

std::string world_to_json(const WorldInstance& w) {
  json doc;
  doc["format"] = "snc-world";
  doc["version"] = 1;
  doc["num_actions"] = w.world.num_actions;
  doc["num_concepts"] = w.world.num_concepts;
  const Vector& pa = w.world.prior_actions.weights();
  const Vector& pc = w.world.prior_concepts.weights();
  doc["prior_actions"] = std::vector<double>(pa.data(), pa.data() + pa.size());
  doc["prior_concepts"] = std::vector<double>(pc.data(), pc.data() + pc.size());
  std::vector<std::size_t> table;
  for (SymbolId s : w.world.symbols.mapping()) table.push_back(index(s));
  doc["symbol_table"] = table;
  json agents = json::array();
  for (const AgentProfile& agent : w.agents) {
    const Matrix& p = agent.relevance.p_true();
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(p.size()));
    for (Index a = 0; a < p.rows(); ++a) {
      for (Index c = 0; c < p.cols(); ++c) flat.push_back(p(a, c));
    }
    agents.push_back({{"task_id", agent.task_id}, {"p_true", flat}});
  }
  doc["agents"] = agents;
  return doc.dump(2) + "\n";
}

namespace {

const json& require(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(Errc::kSchema, std::string("missing field '") + key + "'");
  return *it;
}

Index require_count(const json& obj, const char* key) {
  const json& v = require(obj, key);
  if (!v.is_number_integer() || v.get<long long>() < 1) {
    throw Error(Errc::kSchema, std::string("'") + key + "' must be a positive integer");
  }
  return static_cast<Index>(v.get<long long>());
}

Vector require_reals(const json& v, const std::string& field, Index expected) {
  if (!v.is_array() || static_cast<Index>(v.size()) != expected) {
    throw Error(Errc::kSchema, "'" + field + "' must be an array of " +
                                   std::to_string(expected) + " numbers");
  }
  Vector out(expected);
  for (Index i = 0; i < expected; ++i) {
    const json& x = v[static_cast<std::size_t>(i)];
    if (!x.is_number()) {
      throw Error(Errc::kSchema, "'" + field + "'[" + std::to_string(i) + "] is not a number");
    }
    out(i) = x.get<double>();
  }
  return out;
}

Dist require_dist(const json& obj, const char* key, Index n) {
  Vector w = require_reals(require(obj, key), key, n);
  try {
    return Dist(std::move(w));
  } catch (const Error& e) {
    throw Error(Errc::kSchema, std::string("'") + key + "': " + e.what());
  }
}

}  // namespace

WorldInstance world_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(Errc::kParse, e.what());
  }
  if (!doc.is_object()) throw Error(Errc::kSchema, "world document must be an object");
  static const char* const kKeys[] = {"format",         "version",      "num_actions",
                                      "num_concepts",   "prior_actions", "prior_concepts",
                                      "symbol_table",   "agents"};
  for (const auto& item : doc.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys), [&](const char* k) {
          return item.key() == k;
        }) == std::end(kKeys)) {
      throw Error(Errc::kSchema, "unknown field '" + item.key() + "'");
    }
  }
  if (require(doc, "format") != "snc-world") throw Error(Errc::kSchema, "'format' must be \"snc-world\"");
  if (require(doc, "version") != 1) throw Error(Errc::kSchema, "unsupported 'version'");
  const Index na = require_count(doc, "num_actions");
  const Index nc = require_count(doc, "num_concepts");
  Dist pa = require_dist(doc, "prior_actions", na);
  Dist pc = require_dist(doc, "prior_concepts", nc);

  SymbolTable table = SymbolTable::identity(nc);
  if (auto it = doc.find("symbol_table"); it != doc.end()) {
    if (!it->is_array() || static_cast<Index>(it->size()) != nc) {
      throw Error(Errc::kSchema, "'symbol_table' must list one symbol per concept");
    }
    std::vector<SymbolId> ids;
    for (const json& s : *it) {
      if (!s.is_number_unsigned()) throw Error(Errc::kSchema, "'symbol_table' entries must be nonnegative integers");
      ids.push_back(SymbolId{s.get<std::size_t>()});
    }
    table = SymbolTable(std::move(ids));
  }

  const json& agents = require(doc, "agents");
  if (!agents.is_array() || agents.empty() || agents.size() > 2) {
    throw Error(Errc::kSchema, "'agents' must hold one or two agents");
  }
  std::vector<AgentProfile> profiles;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const std::string where = "agents[" + std::to_string(i) + "]";
    const json& entry = agents[i];
    if (!entry.is_object()) throw Error(Errc::kSchema, where + " must be an object");
    const json& task = require(entry, "task_id");
    if (!task.is_string()) throw Error(Errc::kSchema, where + ".task_id must be a string");
    Vector flat = require_reals(require(entry, "p_true"), where + ".p_true", na * nc);
    Matrix p(na, nc);
    for (Index a = 0; a < na; ++a) {
      for (Index c = 0; c < nc; ++c) p(a, c) = flat(a * nc + c);
    }
    try {
      profiles.push_back(AgentProfile{task.get<std::string>(), RelevanceModel(std::move(p))});
    } catch (const Error& e) {
      throw Error(Errc::kSchema, where + ".p_true: " + e.what());
    }
  }
  World world{na, nc, std::move(pa), std::move(pc), std::move(table)};
  return {std::move(world), std::move(profiles)};
}

void save_world(const std::filesystem::path& path, const WorldInstance& w) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::kIo, "cannot open " + path.string() + " for writing");
  out << world_to_json(w);
  if (!out) throw Error(Errc::kIo, "write failed for " + path.string());
}

WorldInstance load_world(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::kIo, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return world_from_json(buffer.str());
}

}  // namespace snc
