#include "crp/io.hpp"

#include <fstream>
#include <sstream>

#include "crp/errors.hpp"

namespace crp {

using nlohmann::json;

namespace {

const json& require(const json& j, const char* key, const char* what) {
  if (!j.is_object() || !j.contains(key))
    fail(errc::parse_error, std::string(what) + " needs field '" + key + "'");
  return j.at(key);
}

Rational rational_field(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(static_cast<long long>(j.get<std::int64_t>()));
  if (!j.is_string()) fail(errc::parse_error, where + ": expected a rational string");
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const error& e) {
    fail(errc::parse_error, where + ": " + e.what());
  }
}

}  // namespace

Instance instance_from_json(const json& j) {
  const json& items = require(j, "items", "instance");
  if (!items.is_array() || items.empty()) fail(errc::parse_error, "instance needs a nonempty 'items' array");

  std::vector<Item> parsed;
  parsed.reserve(items.size());
  for (std::size_t i = 0; i < items.size(); ++i) {
    const json& item = items[i];
    std::string name = require(item, "name", "item").get<std::string>();
    const json& support = require(item, "support", "item");
    if (!support.is_array() || support.empty())
      fail(errc::parse_error, "item '" + name + "' needs a nonempty 'support' array");
    std::vector<ValueProb> atoms;
    atoms.reserve(support.size());
    for (const json& entry : support) {
      atoms.push_back(ValueProb{
          rational_field(require(entry, "value", "support entry"), "item '" + name + "' value"),
          rational_field(require(entry, "prob", "support entry"), "item '" + name + "' prob")});
    }
    try {
      parsed.push_back(Item{std::move(name), Marginal::make(std::move(atoms))});
    } catch (const error& e) {
      if (e.code() == errc::parse_error) throw;
      fail(errc::validation_error, std::string("item ") + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return Instance(std::move(parsed));
}

json instance_to_json(const Instance& inst) {
  json items = json::array();
  for (const Item& item : inst.items()) {
    json support = json::array();
    for (const auto& vp : item.marginal.support())
      support.push_back({{"value", vp.value.str()}, {"prob", vp.prob.str()}});
    items.push_back({{"name", item.name}, {"support", std::move(support)}});
  }
  return json{{"items", std::move(items)}};
}

Pricing pricing_from_json(const json& j, std::size_t n_items) {
  const json& prices = j.is_array() ? j : require(j, "prices", "pricing");
  if (!prices.is_array()) fail(errc::parse_error, "pricing needs a 'prices' array");
  if (prices.size() != n_items)
    fail(errc::validation_error, "pricing has " + std::to_string(prices.size()) + " entries for " +
                                     std::to_string(n_items) + " items");
  std::vector<std::optional<Rational>> parsed;
  parsed.reserve(prices.size());
  for (const json& entry : prices) {
    if (entry.is_string() && entry.get<std::string>() == "inf") {
      parsed.emplace_back(std::nullopt);
      continue;
    }
    Rational price = rational_field(entry, "price");
    if (price.is_negative()) fail(errc::validation_error, "negative price " + price.str());
    parsed.emplace_back(std::move(price));
  }
  return Pricing(std::move(parsed));
}

json pricing_to_json(const Pricing& p) {
  json prices = json::array();
  for (std::size_t i = 0; i < p.size(); ++i)
    prices.push_back(p.offered(i) ? json(p.price(i).str()) : json("inf"));
  return json{{"prices", std::move(prices)}};
}

Coupling coupling_from_json(const json& j, std::size_t n_items) {
  const json& chains = j.is_array() ? j : require(j, "chains", "coupling");
  if (!chains.is_array() || chains.empty())
    fail(errc::parse_error, "coupling needs a nonempty array of chains");
  Coupling c;
  c.chains.reserve(chains.size());
  for (const json& entry : chains) {
    Chain chain;
    chain.mass = rational_field(require(entry, "mass", "chain"), "chain mass");
    const json& values = require(entry, "values", "chain");
    if (!values.is_array() || values.size() != n_items)
      fail(errc::validation_error, "chain needs one value per item");
    chain.values.reserve(values.size());
    for (const json& v : values) chain.values.push_back(rational_field(v, "chain value"));
    c.chains.push_back(std::move(chain));
  }
  return c;
}

json coupling_to_json(const Coupling& c) {
  json chains = json::array();
  for (const Chain& chain : c.chains) {
    json values = json::array();
    for (const Rational& v : chain.values) values.push_back(v.str());
    chains.push_back({{"mass", chain.mass.str()}, {"values", std::move(values)}});
  }
  return chains;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(errc::file_not_found, path);
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(errc::parse_error, path + ": malformed JSON");
  return j;
}

Instance load_instance(const std::string& path) { return instance_from_json(load_json(path)); }

Pricing load_pricing(const std::string& path, std::size_t n_items) {
  return pricing_from_json(load_json(path), n_items);
}

Coupling load_coupling(const std::string& path, std::size_t n_items) {
  return coupling_from_json(load_json(path), n_items);
}

std::string digest_files(const std::vector<std::string>& paths) {
  std::uint64_t hash = 1469598103934665603ULL;
  auto mix = [&](const char* data, std::size_t len) {
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= static_cast<unsigned char>(data[i]);
      hash *= 1099511628211ULL;
    }
  };
  for (const std::string& path : paths) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(errc::file_not_found, path);
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string content = buf.str();
    mix(content.data(), content.size());
    mix("\x1f", 1);
  }
  std::ostringstream out;
  out << "fnv64:" << std::hex << hash;
  return out.str();
}

}  // namespace crp
