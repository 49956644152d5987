#pragma once

namespace quadsemi {

// Numerical thresholds shared by the pipeline. Relative thresholds are
// multiplied by the norm of the matrix they are applied to.
struct Tolerances {
    double psd = 1e-10;         // Re Q >= -psd * ||Re Q||
    double ellipticity = 1e-8;  // min |q| on the real unit sphere
    double rank = 1e-10;        // relative singular-value cutoff
    double cluster = 1e-8;      // eigenvalue clustering, relative to ||F||
    double structure = 1e-10;   // symplectic / Lagrangian / normal-form residuals
    double fiber = 1e-10;       // |det B| of the canonical map, relative
    double alpha_floor = 1e-10; // alpha may dip this far below zero

    // Every threshold multiplied by `factor`.
    Tolerances scaled(double factor) const;

    // Defaults scaled by the QUADSEMI_TOL environment variable when set.
    static Tolerances from_env();
};

}  // namespace quadsemi
