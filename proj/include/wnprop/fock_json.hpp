#pragma once
#include <string>

#include <json.hpp>

#include "wnprop/fock.hpp"

namespace wnprop {

// Wire format for kernel vectors:
// {basis:{D,weights}, kernels:[{degree, entries:[{multi_index,re,im}]}]}
inline nlohmann::json chaos_to_json(const ChaosVector& v) {
  nlohmann::json j;
  j["basis"] = {{"D", v.basis.dim}, {"weights", v.basis.weights}};
  j["kernels"] = nlohmann::json::array();
  for (int n = 0; n <= v.max_degree(); ++n) {
    nlohmann::json k;
    k["degree"] = n;
    k["entries"] = nlohmann::json::array();
    for (auto& [m, c] : v.kernels[n].coeff)
      k["entries"].push_back({{"multi_index", m}, {"re", c.real()}, {"im", c.imag()}});
    j["kernels"].push_back(std::move(k));
  }
  return j;
}

inline ChaosVector chaos_from_json(const nlohmann::json& j) {
  WeightedBasis basis;
  basis.dim = j.at("basis").at("D").get<int>();
  basis.weights = j.at("basis").at("weights").get<std::vector<double>>();
  basis.validate();
  int n_trunc = -1;
  for (auto& k : j.at("kernels")) n_trunc = std::max(n_trunc, k.at("degree").get<int>());
  if (n_trunc < 0) n_trunc = 0;
  ChaosVector v(basis, n_trunc);
  for (auto& k : j.at("kernels")) {
    int deg = k.at("degree").get<int>();
    for (auto& e : k.at("entries")) {
      MultiIndex m = e.at("multi_index").get<MultiIndex>();
      if (static_cast<int>(m.size()) != basis.dim || mi_total(m) != deg)
        throw std::invalid_argument("kernel json: bad multi_index");
      v.kernels[deg].add(m, {e.at("re").get<double>(), e.at("im").get<double>()});
    }
  }
  return v;
}

}  // namespace wnprop
