#include <cstdlib>
#include <cstring>
#include <iostream>

#include "btq/acceptance.hpp"

int main(int argc, char** argv) {
  btq::AcceptanceOptions options;
  bool verbose = true;
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--quiet") == 0) {
      verbose = false;
    } else if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else if (std::strcmp(argv[i], "--threads") == 0 && i + 1 < argc) {
      options.threads = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: btq_acceptance [--quiet] [--criterion N] [--threads N]\n";
      return 2;
    }
  }

  using Fn = btq::CriterionResult (*)(const btq::AcceptanceOptions&);
  const Fn all[] = {btq::criterion_double_ray,       btq::criterion_nagao_baseline, btq::criterion_cusp_formula,
                    btq::criterion_even_upper_bound, btq::criterion_stabilizer_lemma, btq::criterion_split_counts,
                    btq::criterion_amalgam,          btq::criterion_properties};
  if (only < 0 || only > 8) {
    std::cerr << "criterion must be in 1..8\n";
    return 2;
  }
  int failed = 0;
  for (int k = 1; k <= 8; ++k) {
    if (only != 0 && k != only) continue;
    const auto r = all[k - 1](options);
    std::cout << btq::format_result(r, verbose);
    if (!r.pass) ++failed;
  }
  if (only == 0) {
    std::cout << (failed == 0 ? "all acceptance criteria pass" : std::to_string(failed) + " acceptance criteria fail")
              << "\n";
  }
  return failed == 0 ? 0 : 1;
}
