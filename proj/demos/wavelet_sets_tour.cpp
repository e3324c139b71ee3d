// Walks through the decision procedure and the frame checks on two sets:
// the Shannon set, which is a Heisenberg wavelet set, and a set that tiles by
// dilations but folds onto itself under integer shifts.

#include <iomanip>
#include <iostream>

#include "heisen/heisen.hpp"

using namespace heisen;

namespace {

void describe(const IntervalUnion& s) {
    const auto tr = is_translation_congruent_unit(s);
    const auto dl = is_dilation_congruent_shannon(s);
    std::cout << to_string(s) << "\n  translation congruent with [0,1): " << std::boolalpha << tr.congruent;
    if (tr.overlapping_pair) std::cout << "  (overlap " << to_string(tr.overlap) << ")";
    std::cout << "\n  dilation congruent with the Shannon set: " << dl.congruent << '\n';
    for (const auto& w : dl.pieces)
        std::cout << "    " << to_string(w.piece) << " -> 2^" << w.exponent << " * piece = " << to_string(w.image)
                  << '\n';
}

}  // namespace

int main() {
    const IntervalUnion shannon = shannon_set();
    const IntervalUnion folded =
        IntervalUnion::normalize({{Rational(3, 8), Rational(3, 4)}, {Rational(-3, 4), Rational(-3, 8)}});
    describe(shannon);
    describe(folded);

    std::cout << std::setprecision(12) << "\nindicator field over the Shannon set\n";
    const Field g = indicator_gabor_field(shannon, 1, 1, Rational(1, 4));
    std::cout << "  norm2 = " << norm2(g) << '\n';
    const auto adm = check_necessary_condition(g, 1, 1, 1, 1);
    std::cout << "  Calderon integrals " << adm.integral_pos << ", " << adm.integral_neg << "  (ln 2 = "
              << std::numbers::ln2 << ")\n";

    BankSpec spec;
    spec.support = shannon;
    const auto bank = make_test_bank(spec, 7, 4);
    const auto rep = verify_parseval_translation(g, shannon, 1, 1, bank, {}, 0.05);
    std::cout << "  translation frame ratios at 16^3: [" << rep.min_ratio << ", " << rep.max_ratio << "]\n";

    std::cout << "\ncounterexample on the folded set\n";
    const IntervalUnion e = IntervalUnion::single(Rational(1, 2), Rational(5, 8));
    const Field w = counterexample_window(folded, Rational(1, 256));
    for (int p : {4, 6, 8}) {
        const Field eta = build_counterexample_eta(folded, e, pow2(-p));
        const auto scan = orthogonality_scan(eta, w, {8, 8, 8, {}, {}});
        std::cout << "  dlambda = 2^-" << p << ": norm2(eta) = " << norm2(eta)
                  << ", max |<eta, g_klm>| = " << scan.max_abs << '\n';
    }
    return 0;
}
