// Prints the sharp-AFE constant table: for each weight and m, the maximum of
// |afe_sharp - oracle| / |t|^(1/2 - sigma + 0.05) over the calibration grid, times 1.5.

#include <cmath>
#include <cstdio>
#include <vector>

#include "cuspl/forms.hpp"
#include "cuspl/lseries.hpp"

int main() {
  using namespace cuspl;
  const std::vector<double> sigmas = {0.0, 0.25, 0.5, 0.75, 1.0};
  std::printf("constexpr std::array<std::array<double, %d>, %zu> kSharpConstant = {{\n",
              kMaxDerivative + 1, supported_weights().size());
  for (int k : supported_weights()) {
    const CuspForm form = build_eigenform(k, 4096);
    std::vector<double> worst(kMaxDerivative + 1, 0.0);
    for (double sigma : sigmas) {
      for (double t = 20.0; t <= 200.0; t += 1.0) {
        const cplx s(sigma, t);
        const auto ref = oracle_derivatives(form, kMaxDerivative, s);
        for (int m = 0; m <= kMaxDerivative; ++m) {
          const double diff = std::abs(afe_sharp(form, m, s).value - ref[m].value);
          worst[m] = std::max(worst[m], diff / std::pow(t, 0.5 - sigma + kSharpEpsilon));
        }
      }
    }
    std::printf("    {");
    for (int m = 0; m <= kMaxDerivative; ++m) {
      std::printf("%s%.3g", m ? ", " : "", 1.5 * worst[m]);
    }
    std::printf("},  // k = %d\n", k);
  }
  std::printf("}};\n");
  return 0;
}
