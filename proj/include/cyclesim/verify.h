#ifndef CYCLESIM_VERIFY_H
#define CYCLESIM_VERIFY_H

#include <cstdint>
#include <string>
#include <vector>

namespace cyclesim {

/// Serialized kets of U_3 applied to the 3-cycle with the uniform 3-bit ancilla, n = 4.
extern const std::vector<std::string> kExampleOneKets;

struct PermutationCheck {
    std::size_t labels = 0;
    std::size_t violations = 0;
};

/// Applies U_m to every label of the register spanning vertices 1..m+1 plus the
/// level-m ancilla and counts labels whose image collides, leaves the register,
/// or does not map back under U_m^dagger.
PermutationCheck check_um_permutation_exhaustive(int m);

/// U_m^dagger(U_m(x)) == x on `samples` uniformly random labels of the same register.
PermutationCheck check_um_inverse_sampled(int m, std::size_t samples, std::uint64_t seed);

struct CheckResult {
    std::string name;
    bool pass;
    std::string detail;
};

/// Oracle equivalence, uniformity, probability law, unitarity, aux equivalence,
/// reversibility and (n >= 4) the bit-exact 3 -> 4 expansion, for 3 <= n <= 8.
std::vector<CheckResult> run_verification(int n);

}  // namespace cyclesim

#endif
