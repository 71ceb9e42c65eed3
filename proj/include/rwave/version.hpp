#pragma once

namespace rwave {

#ifndef RWAVE_GIT_REV
#define RWAVE_GIT_REV "unknown"
#endif

inline const char* artifact_version() { return "0.1.0+" RWAVE_GIT_REV; }

}  // namespace rwave
