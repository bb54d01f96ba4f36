// Prints the beta = 1/2 survival and density comparison and a few counting
// probabilities of the three processes.
#include <fracrenewal/fracrenewal.hpp>

#include <cstdio>

int main() {
  using namespace fracrenewal;
  const MittagLefflerLaw ml(0.5);
  const WrightLaw wright(0.5);
  const PoissonLaw poisson(1.0);

  std::printf("%8s %12s %12s %12s\n", "t", "ml", "wright", "poisson");
  for (double t : {0.1, 1.0, 10.0, 100.0}) {
    std::printf("%8g %12.4e %12.4e %12.4e\n", t, ml.survival(t), wright.survival(t), poisson.survival(t));
  }

  std::printf("\nP(N(2) = k)\n");
  for (int k = 0; k <= 5; ++k) {
    std::printf("%2d %12.6f %12.6f %12.6f\n", k, counting_prob(ml, k, 2.0), counting_prob(wright, k, 2.0),
                counting_prob(poisson, k, 2.0));
  }
  std::printf("\nm(100): ml %.4f  poisson %.4f\n", renewal_function(ml, 100.0), renewal_function(poisson, 100.0));
}
