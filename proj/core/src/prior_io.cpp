#include <string>

#include "activemars/errors.hpp"
#include "activemars/io.hpp"
#include "activemars/version.hpp"
#include "json_util.hpp"
#include "overloaded.hpp"

namespace activemars {

namespace {

using detail::overloaded;

Json base_to_json(const BaseMeasure& m) {
  return std::visit(
      overloaded{
          [](const Uniform& u) {
            return Json{{"dist", "uniform"}, {"params", {{"lo", u.lo}, {"hi", u.hi}}}};
          },
          [](const Beta& b) {
            return Json{{"dist", "beta"}, {"params", {{"alpha", b.alpha}, {"beta", b.beta}}}};
          },
          [](const Gamma& g) {
            return Json{{"dist", "gamma"}, {"params", {{"shape", g.shape}, {"rate", g.rate}}}};
          },
          [](const TruncNormal& t) {
            return Json{{"dist", "normal"},
                        {"params", {{"mu", t.mu}, {"sigma", t.sigma}}},
                        {"truncation", {real_to_json(t.lower), real_to_json(t.upper)}}};
          },
      },
      m);
}

Json measure_to_json(const UnivariateMeasure& m) {
  return std::visit(overloaded{
                        [](const UnivariateMixture& mix) {
                          Json comps = Json::array();
                          for (const auto& c : mix.components) {
                            comps.push_back({{"weight", c.weight}, {"measure", base_to_json(c.measure)}});
                          }
                          return Json{{"dist", "mixture"}, {"components", std::move(comps)}};
                        },
                        [](const auto& base) { return base_to_json(BaseMeasure{base}); },
                    },
                    m);
}

double param(const Json& params, const char* name) {
  if (!params.contains(name)) throw InputError(std::string("missing parameter '") + name + "'");
  return json_to_real(params[name]);
}

BaseMeasure base_from_json(const Json& j) {
  const auto dist = j.at("dist").get<std::string>();
  const Json params = j.value("params", Json::object());
  if (dist == "uniform") return Uniform{param(params, "lo"), param(params, "hi")};
  if (dist == "beta") return Beta{param(params, "alpha"), param(params, "beta")};
  if (dist == "gamma") return Gamma{param(params, "shape"), param(params, "rate")};
  if (dist == "normal" || dist == "truncnormal") {
    TruncNormal t{param(params, "mu"), param(params, "sigma"), -kInf, kInf};
    if (j.contains("truncation")) {
      const Json& tr = j["truncation"];
      if (!tr.is_array() || tr.size() != 2) throw InputError("truncation must be [lower, upper]");
      t.lower = json_to_real(tr[0]);
      t.upper = json_to_real(tr[1]);
    }
    return t;
  }
  if (dist == "mixture") throw InputError("mixture components cannot themselves be mixtures");
  throw InputError("unknown distribution '" + dist + "'");
}

UnivariateMeasure measure_from_json(const Json& j) {
  if (j.at("dist").get<std::string>() != "mixture") {
    return std::visit([](const auto& b) { return UnivariateMeasure{b}; }, base_from_json(j));
  }
  UnivariateMixture mix;
  for (const Json& c : j.at("components")) {
    mix.components.push_back({json_to_real(c.at("weight")), base_from_json(c.at("measure"))});
  }
  return mix;
}

Json spec_to_json(const PriorSpec& prior) {
  return std::visit(
      overloaded{
          [](const ProductPrior& p) {
            Json marginals = Json::array();
            for (const auto& m : p.marginals) marginals.push_back(measure_to_json(m));
            return Json{{"type", "product"}, {"marginals", std::move(marginals)}};
          },
          [](const GaussianPrior& g) {
            return Json{{"type", "mvn"},
                        {"mean", detail::vector_to_json(g.mean)},
                        {"cov", detail::matrix_to_json(g.cov)}};
          },
          [](const MixturePrior& m) {
            Json comps = Json::array();
            for (const auto& c : m.components) {
              comps.push_back({{"weight", c.weight}, {"prior", spec_to_json(c.prior)}});
            }
            return Json{{"type", "mixture"}, {"components", std::move(comps)}};
          },
      },
      prior.value);
}

PriorSpec spec_from_json(const Json& j) {
  const auto type = j.at("type").get<std::string>();
  if (type == "product") {
    ProductPrior p;
    for (const Json& m : j.at("marginals")) p.marginals.push_back(measure_from_json(m));
    return p;
  }
  if (type == "mvn") {
    GaussianPrior g;
    g.mean = detail::vector_from_json(j.at("mean"), "mean");
    g.cov = detail::square_from_json(j.at("cov"), static_cast<std::size_t>(g.mean.size()), "cov");
    return g;
  }
  if (type == "mixture") {
    MixturePrior m;
    for (const Json& c : j.at("components")) {
      m.components.push_back({json_to_real(c.at("weight")), spec_from_json(c.at("prior"))});
    }
    return m;
  }
  throw InputError("unknown prior type '" + type + "'");
}

}  // namespace

Json prior_to_json(const PriorSpec& prior) {
  Json doc = spec_to_json(prior);
  doc["version"] = kFormatVersion;
  return doc;
}

PriorSpec prior_from_json(const Json& doc) {
  check_version(doc);
  PriorSpec prior;
  try {
    prior = spec_from_json(doc);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed prior file: ") + e.what());
  }
  validate(prior);
  return prior;
}

void write_prior(const std::filesystem::path& path, const PriorSpec& prior, const Json& manifest) {
  Json doc = prior_to_json(prior);
  if (!manifest.is_null()) doc["manifest"] = manifest;
  write_json_file(path, doc);
}

PriorSpec read_prior(const std::filesystem::path& path) { return prior_from_json(read_json_file(path)); }

}  // namespace activemars
