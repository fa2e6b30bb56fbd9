#include <array>
#include <sstream>

#include "cuspl/error.hpp"
#include "cuspl/lseries.hpp"

namespace cuspl {

namespace {

// max over t in [20, 200], sigma in {0, 1/4, 1/2, 3/4, 1} of
// |afe_sharp - oracle| / |t|^(1/2 - sigma + 0.05), times 1.5.
// Rows: weights 12, 16, 18, 20, 22, 26. Columns: m = 0..4.
// Regenerate with tools/calibrate_sharp.
constexpr std::array<std::array<double, 5>, 6> kSharpConstant = {{
    {0.546, 1.55, 5.15, 17.4, 58.5},  // k = 12
    {0.716, 1.97, 6.48, 21.3, 70.2},  // k = 16
    {1.31, 2.77, 9.54, 32.8, 112},    // k = 18
    {2.09, 2.65, 6.32, 20, 63.5},     // k = 20
    {2.05, 3.08, 6.3, 21.2, 71.3},    // k = 22
    {2.92, 4.36, 6.55, 9.95, 25.8},   // k = 26
}};

}  // namespace

double afe_sharp_constant(int weight, int m) {
  const auto& w = supported_weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == weight && m >= 0 && m <= kMaxDerivative) return kSharpConstant[i][m];
  }
  std::ostringstream os;
  os << "afe_sharp_constant: no calibration for weight " << weight << ", m = " << m;
  throw DomainError(os.str());
}

}  // namespace cuspl
