#pragma once

#include <iosfwd>
#include <string>

#include "vdl/diagnostics.hpp"
#include "vdl/solver.hpp"

namespace vdl {

struct RunConfig {
    SimConfig sim;
    DiagOptions diag;
    long checkpoint_every = 0; // in records; 0 = final checkpoint only
    std::string prefix = "run";
};

// INI-style: [grid] n,l; [solver] nu,dt,t_end,init,dealias,cfl_safety;
// [diagnostics] output_every,r_list,alpha_eps,riesz_beta,riesz_images,
//   holder,holder_every,holder_pairs,holder_bins,holder_quantile,
//   holder_kthresh,holder_delta_max,holder_seed;
// [output] checkpoint_every,prefix.
// Unknown sections or keys are rejected.
RunConfig parse_config(std::istream& in);
RunConfig parse_config_file(const std::string& path);

} // namespace vdl
