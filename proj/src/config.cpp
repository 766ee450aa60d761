#include "padeclust/config.hpp"

#include <algorithm>

#include "padeclust/errors.hpp"

namespace padeclust {

namespace {

constexpr ExperimentName kAll[] = {
    ExperimentName::kEtClustering,  ExperimentName::kDiscreteExample,
    ExperimentName::kToeplitzAnticoncentration, ExperimentName::kDetGrowth,
    ExperimentName::kZeroRadius,    ExperimentName::kPoleClustering,
};

bool needs_pade(ExperimentName name) {
  return name == ExperimentName::kEtClustering || name == ExperimentName::kDiscreteExample ||
         name == ExperimentName::kPoleClustering;
}

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config key '") + key + "': " + e.what());
  }
}

}  // namespace

std::string experiment_name(ExperimentName name) {
  switch (name) {
    case ExperimentName::kEtClustering:
      return "et-clustering";
    case ExperimentName::kDiscreteExample:
      return "discrete-example";
    case ExperimentName::kToeplitzAnticoncentration:
      return "toeplitz-anticoncentration";
    case ExperimentName::kDetGrowth:
      return "det-growth";
    case ExperimentName::kZeroRadius:
      return "zero-radius";
    case ExperimentName::kPoleClustering:
      return "pole-clustering";
  }
  return "unknown";
}

std::vector<std::string> experiment_names() {
  std::vector<std::string> out;
  for (auto n : kAll) out.push_back(experiment_name(n));
  return out;
}

ExperimentName parse_experiment(const std::string& name) {
  for (auto n : kAll) {
    if (experiment_name(n) == name) return n;
  }
  std::string valid;
  for (const auto& v : experiment_names()) valid += (valid.empty() ? "" : ", ") + v;
  throw ConfigError("unknown experiment '" + name + "'; valid names: " + valid);
}

std::string precision_name(Precision p) { return p == Precision::kExtended ? "extended" : "double"; }

Precision parse_precision(const std::string& name) {
  if (name == "double") return Precision::kDouble;
  if (name == "extended") return Precision::kExtended;
  throw ConfigError("precision must be 'double' or 'extended', got '" + name + "'");
}

ExperimentConfig default_config(ExperimentName name) {
  ExperimentConfig c;
  c.name = name;
  switch (name) {
    case ExperimentName::kEtClustering:
      c.m = {50, 100, 200, 400};
      c.n = {1, 2};
      c.trials = 200;
      break;
    case ExperimentName::kDiscreteExample:
      c.spec = {DistributionKind::kDiscretePmM, 100};
      c.m = {200, 400, 800};
      c.n = {10};
      c.trials = 100;
      break;
    case ExperimentName::kToeplitzAnticoncentration:
      c.n = {2, 5, 10, 20};
      c.epsilon = {0.01, 0.05, 0.1};
      c.trials = 10000;
      break;
    case ExperimentName::kDetGrowth:
      c.m = {64, 128, 256, 512};
      c.n = {2};
      c.trials = 50;
      break;
    case ExperimentName::kZeroRadius:
      c.N = 2048;
      c.r = {0.9, 0.95, 0.99, 0.995};
      c.s = {4, 8, 16, 32, 64};
      c.trials = 50;
      c.precision = Precision::kExtended;
      break;
    case ExperimentName::kPoleClustering:
      c.m = {1};
      c.n = {8, 16, 32};
      c.N = 1024;
      c.trials = 30;
      c.precision = Precision::kExtended;
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw ConfigError("trials must be positive");
  if (spec.kind == DistributionKind::kDiscretePmM && spec.M < 1) {
    throw ConfigError("discrete_pm_M needs M >= 1");
  }
  if (grid_size < 4) throw ConfigError("grid_size must be at least 4");
  if (family_size < 8) throw ConfigError("family_size must be at least 8");
  for (double x : rho) {
    if (!(x > 0.0 && x <= 1.0)) throw ConfigError("rho values must lie in (0, 1]");
  }
  auto need = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError(what);
  };
  switch (name) {
    case ExperimentName::kEtClustering:
    case ExperimentName::kDiscreteExample:
      need(!m.empty() && !n.empty(), "m and n schedules must be non-empty");
      need(std::all_of(m.begin(), m.end(), [](auto v) { return v >= 1; }), "m must be >= 1");
      if (name == ExperimentName::kDiscreteExample) {
        need(spec.kind == DistributionKind::kDiscretePmM && spec.M >= 2,
             "discrete-example needs distribution discrete_pm_M with M >= 2");
      }
      break;
    case ExperimentName::kToeplitzAnticoncentration:
      need(!n.empty() && std::all_of(n.begin(), n.end(), [](auto v) { return v >= 1; }),
           "n values must be >= 1");
      need(!epsilon.empty() && std::all_of(epsilon.begin(), epsilon.end(),
                                           [](double e) { return e > 0.0; }),
           "epsilon grid must be non-empty and positive");
      break;
    case ExperimentName::kDetGrowth:
      need(!m.empty() && n.size() == 1 && n[0] >= 1, "det-growth needs an m schedule and one n >= 1");
      need(std::all_of(m.begin(), m.end(), [](auto v) { return v >= 1; }), "m must be >= 1");
      break;
    case ExperimentName::kZeroRadius:
      need(N >= 1, "zero-radius needs N >= 1");
      need(std::all_of(r.begin(), r.end(), [](double v) { return v > 0.0 && v < 1.0; }),
           "r values must lie in (0, 1)");
      need(std::all_of(s.begin(), s.end(), [&](auto v) { return v >= 2 && v < N; }),
           "s values must satisfy 2 <= s < N");
      break;
    case ExperimentName::kPoleClustering:
      need(m.size() == 1 && !n.empty(), "pole-clustering needs one m and an n schedule");
      need(m[0] < N, "pole-clustering needs m < N");
      break;
  }
  if (needs_pade(name) && N != 0) {
    for (auto mm : m) {
      for (auto nn : n) {
        if (N < mm + nn) {
          throw ConfigError("N = " + std::to_string(N) + " is below m + n = " +
                            std::to_string(mm + nn));
        }
      }
    }
  }
}

nlohmann::json to_json(const ExperimentConfig& c) {
  nlohmann::json j;
  j["schema_version"] = kConfigSchemaVersion;
  j["experiment"] = experiment_name(c.name);
  j["distribution"] = {{"kind", kind_name(c.spec.kind)}, {"M", c.spec.M}};
  j["m"] = c.m;
  j["n"] = c.n;
  j["N"] = c.N;
  j["delta"] = c.delta;
  j["epsilon"] = c.epsilon;
  j["rho"] = c.rho;
  j["r"] = c.r;
  j["s"] = c.s;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["grid_size"] = c.grid_size;
  j["family_size"] = c.family_size;
  j["precision"] = precision_name(c.precision);
  j["threads"] = c.threads;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j, ExperimentName fallback) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("schema_version")) {
    if (!j["schema_version"].is_number_integer() || j["schema_version"].get<int>() != kConfigSchemaVersion) {
      throw ConfigError("unsupported schema_version; expected " +
                        std::to_string(kConfigSchemaVersion));
    }
  }
  ExperimentName name = fallback;
  if (j.contains("experiment")) {
    std::string s;
    read(j, "experiment", s);
    name = parse_experiment(s);
  }
  ExperimentConfig c = default_config(name);
  if (j.contains("distribution")) {
    const auto& d = j["distribution"];
    if (!d.is_object()) throw ConfigError("distribution must be an object");
    std::string kind = kind_name(c.spec.kind);
    read(d, "kind", kind);
    c.spec.kind = parse_kind(kind);
    read(d, "M", c.spec.M);
  }
  read(j, "m", c.m);
  read(j, "n", c.n);
  read(j, "N", c.N);
  read(j, "delta", c.delta);
  read(j, "epsilon", c.epsilon);
  read(j, "rho", c.rho);
  read(j, "r", c.r);
  read(j, "s", c.s);
  read(j, "trials", c.trials);
  read(j, "seed", c.seed);
  read(j, "grid_size", c.grid_size);
  read(j, "family_size", c.family_size);
  read(j, "threads", c.threads);
  if (j.contains("precision")) {
    std::string p;
    read(j, "precision", p);
    c.precision = parse_precision(p);
  }
  c.validate();
  return c;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("experiment")) {
    throw ConfigError("config needs an \"experiment\" name");
  }
  return config_from_json(j, ExperimentName::kEtClustering);
}

}  // namespace padeclust
