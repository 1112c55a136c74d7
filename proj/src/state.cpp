#include "chiralnet/state.hpp"

#include <stdexcept>

namespace chiralnet {

Vector PureState::embed(Variant v) const {
    if (v == Variant::NoCavity && (c_10 != Complex(0.0) || c_01 != Complex(0.0)))
        throw std::invalid_argument("PureState: photon amplitudes in a NoCavity state");
    Vector full = Vector::Zero(v == Variant::WithCavity ? 16 : 4);
    const auto idx = single_excitation_indices(v);
    full[idx[0]] = c_gg;
    full[idx[1]] = c_eg;
    full[idx[2]] = c_ge;
    if (v == Variant::WithCavity) {
        full[idx[3]] = c_10;
        full[idx[4]] = c_01;
    }
    return full;
}

PureState PureState::extract(const Vector& full, Variant v) {
    const auto idx = single_excitation_indices(v);
    PureState s;
    s.c_gg = full[idx[0]];
    s.c_eg = full[idx[1]];
    s.c_ge = full[idx[2]];
    if (v == Variant::WithCavity) {
        s.c_10 = full[idx[3]];
        s.c_01 = full[idx[4]];
    }
    return s;
}

Vector PureState::sector_vector(Variant v) const {
    Vector out(single_excitation_count(v));
    out[0] = c_gg;
    out[1] = c_eg;
    out[2] = c_ge;
    if (v == Variant::WithCavity) {
        out[3] = c_10;
        out[4] = c_01;
    }
    return out;
}

PureState PureState::from_sector_vector(const Vector& sector, Variant v) {
    PureState s;
    s.c_gg = sector[0];
    s.c_eg = sector[1];
    s.c_ge = sector[2];
    if (v == Variant::WithCavity) {
        s.c_10 = sector[3];
        s.c_01 = sector[4];
    }
    return s;
}

} // namespace chiralnet
