// Shows the two coherence maximizers in action: the per-sector Fourier
// transform on a product register and the balancing beam splitter on a
// lopsided two-mode register.

#include <cstdio>

#include <gaussres/gaussres.hpp>

using namespace gaussres;

namespace {

void print_occupations(const char* label, const GaussianState& s) {
    const OccupationProfile occ = mean_occupation(s);
    std::printf("%-22s", label);
    for (int m = 0; m < s.modes.mode_count(); ++m) std::printf(" %8.5f", occ.per_mode(m));
    std::printf("   (total %.5f)\n", occ.total);
}

void print_outcome(const MaximizerOutcome& out) {
    std::printf("method %-26s achieved %10.7f  ceiling %10.7f  gap %.2e\n",
                out.method.c_str(), out.achieved, out.target, out.gap);
}

}  // namespace

int main() {
    std::printf("-- Fourier equidistribution on a product register --\n");
    const ModeTable three({1.0}, 3);
    Eigen::VectorXd r(3);
    r << 1.0, 0.3, 0.0;
    const GaussianState squeezed = squeezed_vacuum(three, r, Eigen::VectorXd::Zero(3));
    print_occupations("before", squeezed);
    const MaximizerOutcome spread = qft_equidistribute(squeezed);
    print_occupations("after", spread.transformed);
    print_outcome(spread);
    const EquidistributionCertificate cert = equidistribution_certificate(spread.transformed);
    std::printf("equidistributed: %s (max deviation %.2e)\n\n", cert.all_ok ? "yes" : "no",
                cert.deviation.maxCoeff());

    std::printf("-- Balancing beam splitter on coherent light + vacuum --\n");
    const ModeTable two({1.0}, 2);
    const GaussianState lopsided =
        coherent_state(two, {std::complex<double>(std::sqrt(2.0), 0.0), 0.0});
    print_occupations("before", lopsided);
    const MaximizerOutcome balanced = balancing_beam_splitter(lopsided);
    print_occupations("after", balanced.transformed);
    print_outcome(balanced);

    std::printf("\nBoth transforms are passive: they move photons between modes but never\n"
                "create them, and the achieved coherence meets the ceiling C_max.\n");
    return 0;
}
