#pragma once

#include "vdlab/levy.hpp"

#include <map>
#include <string>
#include <vector>

namespace vdlab {

struct CatalogEntryInfo {
    std::string name;
    std::string psi_formula;
    std::vector<std::string> param_names;
    std::string constraints;
    std::map<std::string, double> defaults;
};

/// Names: bessel, confluent_1f1, fox_wright, mittag_leffler,
/// barnes_hypergeometric, hypergeometric_1f2, power_gamma, cosine, sinc.
const std::vector<CatalogEntryInfo>& catalog_entries();

/// Builds a catalog exponent; missing parameters take the defaults listed
/// in catalog_entries(). Throws std::invalid_argument on range violations.
LaplaceExponent make_catalog(const std::string& name, const std::map<std::string, double>& params = {});

LaplaceExponent bessel(double nu);
LaplaceExponent confluent_1f1(double a, double b);
LaplaceExponent fox_wright(double alpha, double beta);
LaplaceExponent mittag_leffler(double alpha, double beta);
LaplaceExponent barnes_hypergeometric(double alpha, double rho);
LaplaceExponent hypergeometric_1f2(double alpha);
LaplaceExponent power_gamma(double alpha, double gamma);
LaplaceExponent cosine_exponent();
LaplaceExponent sinc_exponent();

} // namespace vdlab
