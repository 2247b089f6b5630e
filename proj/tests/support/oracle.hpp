#pragma once

#include <optional>
#include <vector>

#include "test_support.hpp"

/// Brute-force reference resolver for the compositor. It shares no geometry
/// code with the library: rays come from rotation matrices, azimuths from
/// atan2 and lune membership from a plain interval test.
namespace ivc::oracle {

using testing::TexelRef;
using Source = std::optional<TexelRef>;

/// Equirect composite of a VR state, row-major; empty entries are the
/// unrendered complement.
std::vector<Source> vr_equirect(const SessionState &s, int width, int height, int src_w, int src_h);

/// Perspective view of a VR state.
std::vector<Source> vr_view(const SessionState &s, double head_yaw, double head_pitch, double hfov, double vfov,
                            int width, int height, int src_w, int src_h);

/// Full 2D canvas.
std::vector<TexelRef> canvas(const SessionState &s, int src_w, int src_h);

} // namespace ivc::oracle
