#include "dochar/model_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace dochar {

using nlohmann::json;

CoefficientSpec ModelConfig::coefficient() const {
  if (coeff_kind == "constant") return CoefficientSpec::constant(a0);
  if (coeff_kind == "polynomial") return CoefficientSpec::polynomial(a0, coeffs);
  if (coeff_kind == "flat") return CoefficientSpec::flat(a0, flat_scale);
  throw std::invalid_argument("unknown coeff_kind '" + coeff_kind + "'");
}

ModelConfig parse_model_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected an object");
  ModelConfig c;
  try {
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& key = it.key();
      const json& v = it.value();
      if (key == "k") c.k = v.get<int>();
      else if (key == "a0") c.a0 = v.get<double>();
      else if (key == "coeff_kind") c.coeff_kind = v.get<std::string>();
      else if (key == "coeffs") c.coeffs = v.get<std::vector<double>>();
      else if (key == "flat_scale") c.flat_scale = v.get<double>();
      else if (key == "delta0") c.delta0 = v.get<double>();
      else if (key == "tau0") c.tau0 = v.get<double>();
      else if (key == "gamma0") c.gamma0 = v.get<double>();
      else if (key == "gamma1") c.gamma1 = v.get<double>();
      else if (key == "probe_B") c.probe_B = v.get<double>();
      else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config: ") + e.what());
  }
  if (c.k < 1) throw std::invalid_argument("config: k must be >= 1");
  if (!(c.delta0 > 0.0)) throw std::invalid_argument("config: delta0 <= 0");
  if (!(c.flat_scale > 0.0)) throw std::invalid_argument("config: flat_scale <= 0");
  if (!c.regions().nested(c.k)) {
    throw std::invalid_argument("config: region constants are not nested");
  }
  (void)c.coefficient();
  return c;
}

ModelConfig load_model_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_config(ss.str());
}

std::string model_config_to_json(const ModelConfig& c) {
  json j = {{"k", c.k},
            {"a0", c.a0},
            {"coeff_kind", c.coeff_kind},
            {"coeffs", c.coeffs},
            {"flat_scale", c.flat_scale},
            {"delta0", c.delta0},
            {"tau0", c.tau0},
            {"gamma0", c.gamma0},
            {"gamma1", c.gamma1}};
  if (c.probe_B) j["probe_B"] = *c.probe_B;
  return j.dump();
}

}  // namespace dochar
