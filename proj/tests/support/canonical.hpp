#pragma once

// The reference configuration used across the test suites: full 2-shift,
// p0 = 0-repeat, p1 = 1-repeat, psi the Urysohn table at radius 2, and a
// radius-1 roof with values in [0.9, 1.1] (so C = 1.2 is a valid bound).

#include "irrlab/irregular.hpp"
#include "irrlab/symbolic.hpp"

namespace irrlab::testing {

inline symbolic::SubshiftSpec canonical_spec() { return symbolic::full_shift(2); }

inline symbolic::PeriodicPoint canonical_p0() {
    return symbolic::make_periodic_point(canonical_spec(), {0});
}

inline symbolic::PeriodicPoint canonical_p1() {
    return symbolic::make_periodic_point(canonical_spec(), {1});
}

/// Radius-1 roof: 1.04 + 0.03 (w[-1] + w[+1]) on windows centered at 0,
/// 0.90 + 0.03 (w[-1] + w[+1]) on windows centered at 1. All values lie in
/// [0.90, 1.10].
inline irregular::RoofFunction canonical_roof() {
    std::map<symbolic::Word, Rational> table;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c) {
                long base = b == 0 ? 104 : 90;
                table[{a, b, c}] = Rational(base + 3L * (a + c), 100);
            }
    return irregular::RoofFunction(2, 1, std::move(table));
}

inline irregular::ObservablePsi canonical_psi(int m0 = 2) {
    return irregular::build_psi(canonical_spec(), canonical_p0(), canonical_p1(), m0);
}

inline Rational canonical_C() { return Rational(6, 5); }
inline Rational canonical_delta() { return Rational(1, 100); }

inline irregular::TimingSchedule canonical_schedule(int m_count = 12) {
    return irregular::build_schedule(1, 1, 1, canonical_C(), m_count, canonical_delta());
}

inline irregular::IrregularPointProgram canonical_program(int m_count = 12) {
    auto spec = canonical_spec();
    return irregular::construct_irregular_point(spec, canonical_p0(), canonical_p1(),
                                                canonical_schedule(m_count));
}

} // namespace irrlab::testing
