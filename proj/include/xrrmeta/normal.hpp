#pragma once

namespace xrrmeta {

// Standard normal quantile (AS 241, double precision).
double norm_ppf(double p);

// Upper tail P(Z > x).
double norm_sf(double x);

}  // namespace xrrmeta
