#pragma once

namespace ldo {

// bumped whenever a module's observable output changes
inline constexpr const char* kModuleVersions =
    "numfield/1.0 rootdata/1.0 decomp/1.0 strata/1.0 dynamics/1.0 forms/1.0 cli/1.0";

}  // namespace ldo
