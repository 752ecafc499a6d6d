#include "fishbit/analysis/solubility.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "fishbit/error.hpp"

namespace fishbit::analysis {

namespace {

// Air-saturated O2 (mg/L, 1 atm) from the Benson & Krause (1984) fit as
// published in APHA Standard Methods 4500-O:
//   ln C = -139.34411 + 1.575701e5/T - 6.642308e7/T^2 + 1.243800e10/T^3
//          - 8.621949e11/T^4 - S (1.7674e-2 - 10.754/T + 2140.7/T^2),  T in K.
// Rows: 0..40 degC step 2. Columns: 0..40 psu step 5.
constexpr double kTempStep = 2.0;
constexpr double kSalStep = 5.0;
constexpr std::array<std::array<double, 9>, 21> kTable = {{
    {14.6208, 14.1183, 13.6330, 13.1644, 12.7120, 12.2750, 11.8531, 11.4457, 11.0523},  // 0
    {13.8302, 13.3635, 12.9125, 12.4767, 12.0557, 11.6489, 11.2558, 10.8759, 10.5089},  // 2
    {13.1084, 12.6739, 12.2538, 11.8477, 11.4550, 11.0753, 10.7082, 10.3533, 10.0102},  // 4
    {12.4482, 12.0428, 11.6507, 11.2713, 10.9042, 10.5491, 10.2056, 9.8733, 9.5518},    // 6
    {11.8433, 11.4643, 11.0973, 10.7422, 10.3983, 10.0655, 9.7434, 9.4315, 9.1297},     // 8
    {11.2879, 10.9327, 10.5887, 10.2555, 9.9328, 9.6202, 9.3175, 9.0243, 8.7403},       // 10
    {10.7770, 10.4434, 10.1202, 9.8070, 9.5034, 9.2093, 8.9242, 8.6480, 8.3804},        // 12
    {10.3058, 9.9920, 9.6877, 9.3927, 9.1066, 8.8293, 8.5604, 8.2998, 8.0470},          // 14
    {9.8704, 9.5745, 9.2875, 9.0092, 8.7391, 8.4772, 8.2231, 7.9766, 7.7375},           // 16
    {9.4670, 9.1876, 8.9165, 8.6533, 8.3979, 8.1501, 7.9096, 7.6762, 7.4496},           // 18
    {9.0924, 8.8281, 8.5715, 8.3223, 8.0804, 7.8455, 7.6175, 7.3961, 7.1811},           // 20
    {8.7437, 8.4933, 8.2500, 8.0137, 7.7842, 7.5612, 7.3447, 7.1343, 6.9300},           // 22
    {8.4182, 8.1806, 7.9496, 7.7252, 7.5071, 7.2952, 7.0892, 6.8891, 6.6946},           // 24
    {8.1136, 7.8878, 7.6682, 7.4547, 7.2472, 7.0455, 6.8493, 6.6587, 6.4733},           // 26
    {7.8278, 7.6128, 7.4038, 7.2005, 7.0028, 6.8105, 6.6235, 6.4416, 6.2648},           // 28
    {7.5588, 7.3540, 7.1547, 6.9609, 6.7723, 6.5888, 6.4103, 6.2366, 6.0676},           // 30
    {7.3050, 7.1096, 6.9195, 6.7344, 6.5543, 6.3790, 6.2084, 6.0423, 5.8807},           // 32
    {7.0648, 6.8782, 6.6965, 6.5197, 6.3475, 6.1799, 6.0167, 5.8578, 5.7031},           // 34
    {6.8368, 6.6584, 6.4847, 6.3156, 6.1508, 5.9903, 5.8341, 5.6819, 5.5337},           // 36
    {6.6198, 6.4492, 6.2829, 6.1209, 5.9632, 5.8094, 5.6597, 5.5138, 5.3716},           // 38
    {6.4127, 6.2493, 6.0901, 5.9349, 5.7836, 5.6363, 5.4926, 5.3527, 5.2163},           // 40
}};

}  // namespace

double o2_solubility_mg_per_l(double temp_c, double salinity_psu) {
  const double t_max = kTempStep * (kTable.size() - 1);
  const double s_max = kSalStep * (kTable[0].size() - 1);
  if (!(temp_c >= 0.0 && temp_c <= t_max) || !(salinity_psu >= 0.0 && salinity_psu <= s_max)) {
    throw Error(Errc::OutOfRange, "solubility table covers 0-40 degC and 0-40 psu, got " +
                                      std::to_string(temp_c) + " degC / " +
                                      std::to_string(salinity_psu) + " psu");
  }
  const double ti = temp_c / kTempStep;
  const double si = salinity_psu / kSalStep;
  const auto r0 = std::min(static_cast<std::size_t>(ti), kTable.size() - 2);
  const auto c0 = std::min(static_cast<std::size_t>(si), kTable[0].size() - 2);
  const double ft = ti - static_cast<double>(r0);
  const double fsal = si - static_cast<double>(c0);
  const double lo = kTable[r0][c0] + fsal * (kTable[r0][c0 + 1] - kTable[r0][c0]);
  const double hi = kTable[r0 + 1][c0] + fsal * (kTable[r0 + 1][c0 + 1] - kTable[r0 + 1][c0]);
  return lo + ft * (hi - lo);
}

}  // namespace fishbit::analysis
