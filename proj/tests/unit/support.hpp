#pragma once

#include <complex>
#include <map>
#include <mutex>

#include "cuspl/cache.hpp"
#include "cuspl/forms.hpp"

namespace testing_support {

// Forms come from the coefficient cache ($CUSPL_CACHE_DIR), built on first use.
inline const cuspl::CuspForm& form(int weight, std::size_t n_max = cuspl::kDefaultNMax) {
  static std::mutex mu;
  static std::map<std::pair<int, std::size_t>, cuspl::CuspForm> forms;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(weight, n_max);
  auto it = forms.find(key);
  if (it == forms.end()) it = forms.emplace(key, cuspl::load_or_build(weight, n_max).form).first;
  return it->second;
}

inline double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace testing_support
