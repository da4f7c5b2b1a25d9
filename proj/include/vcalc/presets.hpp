#pragma once

// Shipped algebra presets: Heisenberg, affine sl2, a semidirect-product
// algebra (abelian copy of sl2 extended by sl2 lowering currents), and a
// configurable q-deformed boson space with exponential vertex operators.

#include "vcalc/fields.hpp"
#include "vcalc/module.hpp"

#include <map>
#include <string>
#include <vector>

namespace vcalc {

struct Preset {
    ModulePtr module;
    std::map<std::string, Field> fields;
    QScalar level;

    const Field& field(const std::string& name) const {
        auto it = fields.find(name);
        if (it == fields.end()) throw ModuleError("preset has no field " + name);
        return it->second;
    }
};

// Heisenberg: [h(m), h(n)] = l m delta_{m+n,0}; field h.
Preset make_heisenberg(const QScalar& level, int depth);

// Affine sl2 at level l (trace form <e,f> = 1, <h,h> = 2); fields e, f, h.
Preset make_affine_sl2(const QScalar& level, int depth);

// Semidirect example: K = abelian copy of sl2 with the trace form, extended
// by the lowering half of the sl2 currents acting by the adjoint action.
// Fields: uE, uF, uH (K currents) and aE+, aF+, aH+ (annihilation-free).
Preset make_semidirect(const QScalar& level, int depth);

struct QBosonConfig {
    int depth = 4;
    std::vector<QScalar> c;        // c[m-1] = [a(m), a(-m)] for m = 1..depth
    // exponential field data: exp(sum l_n a(-n) z^n) exp(sum m_n a(n) z^{-n})
    struct ExpSpec {
        std::string name;
        std::vector<QScalar> lam, mu;  // lam[n-1], mu[n-1]
        int zero_mode_shift = 0;       // optional rank-1 twist: factor z^{shift}
    };
    std::vector<ExpSpec> fields;

    // the tuned default: c_n = n, X+ ~ (1-q^2 x)^{-1} / X- ~ (1-q^{-2} x)^{-1}
    static QBosonConfig standard(int depth);
};

Preset make_qboson(const QBosonConfig& cfg);

// exponential vertex operator over a q-boson module
Field exp_field(ModulePtr mod, const std::string& label, const std::vector<QScalar>& lam,
                const std::vector<QScalar>& mu, int zero_mode_shift = 0);

Preset make_preset(const std::string& name, const QScalar& level, int depth);

}  // namespace vcalc
