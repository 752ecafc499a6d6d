#pragma once

namespace fishbit::analysis {

/// Dissolved O2 at air saturation and 1 atm, mg/L, by bilinear interpolation
/// in a 0-40 degC x 0-40 psu table. Throws OutOfRange outside the table.
double o2_solubility_mg_per_l(double temp_c, double salinity_psu);

}  // namespace fishbit::analysis
