#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pspectral/critical_set.hpp"
#include "pspectral/eigen_bounds.hpp"
#include "pspectral/frequency.hpp"
#include "pspectral/model_manifold.hpp"
#include "pspectral/ode_model.hpp"

namespace pspectral {

/// Serialization with fixed field order. CSV numbers use the shortest
/// round-trip representation; JSON keys are lower_snake_case and non-finite
/// numbers are written as null.
enum class Format { Csv, Json };

Format parse_format(std::string_view name);
std::string_view to_string(Format f);

/// Shortest round-trip decimal; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

struct ProfileRow {
  ModelProblem problem;
  ProfileResult result;
};

std::string emit(const Trajectory& t, Format f);                // t,w,v,phi,e
std::string emit(const ProfileResult& r, Format f);             // b,delta,m,status
std::string emit(const std::vector<ProfileRow>& rows, Format f);
std::string emit(const SharpGapResult& r, Format f);
std::string emit(const std::vector<SharpGapResult>& rows, Format f);  // p,n,k,d,lambda_bar
std::string emit(const WitnessReport& r, Format f);
std::string emit(const std::vector<WitnessReport>& rows, Format f);
std::string emit(const CapacityResult& r, Format f);
std::string emit(const EvansResult& r, Format f);
std::string emit(const CutoffEnergy& r, Format f);
std::string emit(const ParabolicityReport& r, Format f);
std::string emit(const StokesReport& r, Format f);
std::string emit(const FrequencyCurve& c, Format f);            // r,H,D,N,Hbar,Nbar
std::string emit(const SymmetryReport& r, Format f);
std::string emit(const StratumReport& r, Format f);
std::string emit(const MinkowskiReport& r, Format f);           // r,volume
std::string emit(const CriticalSet& s, Format f);

}  // namespace pspectral
