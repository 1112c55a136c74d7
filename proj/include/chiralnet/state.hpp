#pragma once

#include "chiralnet/operators.hpp"

namespace chiralnet {

/// Complex amplitudes over the single-excitation basis
/// {|gg00>, |eg00>, |ge00>, |gg10>, |gg01>}. Norm may only shrink under
/// the non-Hermitian evolution; the deficit is the population lost to the
/// waveguide and non-guided modes. NoCavity states keep c_10 = c_01 = 0.
struct PureState {
    Complex c_gg{0.0};
    Complex c_eg{0.0};
    Complex c_ge{0.0};
    Complex c_10{0.0};
    Complex c_01{0.0};

    double norm2() const {
        return std::norm(c_gg) + std::norm(c_eg) + std::norm(c_ge) +
               std::norm(c_10) + std::norm(c_01);
    }

    /// Initial condition used throughout: excitation in atom 1.
    static PureState excited_atom1() {
        PureState s;
        s.c_eg = 1.0;
        return s;
    }

    /// Embeds the amplitudes into the full Hilbert space (dim 16 or 4).
    Vector embed(Variant v) const;
    /// Extracts the sector amplitudes from a full-space vector.
    static PureState extract(const Vector& full, Variant v);

    /// Packs into the sector-ordered vector {gg, eg, ge, 10, 01} of length
    /// single_excitation_count(v).
    Vector sector_vector(Variant v) const;
    static PureState from_sector_vector(const Vector& sector, Variant v);
};

} // namespace chiralnet
