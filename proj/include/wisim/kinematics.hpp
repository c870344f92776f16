// SPDX-License-Identifier: Apache-2.0
//
// wisim: radar sensing channel simulator and micro-Doppler toolkit
// Copyright (C) 2026 The wisim authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <Eigen/Dense>

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wisim {

using Vec3 = Eigen::Vector3d;

// Axis-aligned box room with its lower corner at the origin.
struct Room
{
    Vec3 size{4.5, 3.0, 3.0};

    bool contains(const Vec3 &p, double tol = 1e-9) const;
    void validate() const;
};

// Straight-line path of the subject's ground point.
struct Trajectory
{
    Vec3 start{4.2, 0.0, 0.0};
    Vec3 direction{0.0, 1.0, 0.0}; // horizontal, normalized on use
    double duration = 3.0;         // seconds
};

// Parametric articulated gait. Angles in radians, lengths in meters.
struct GaitParams
{
    double stride_factor = 0.6; // stride = stride_factor * height * clamp(speed)
    double speed_clip_min = 0.5;
    double speed_clip_max = 1.5;
    double hip_swing = 0.35;
    double knee_flex = 0.7;
    double arm_swing = 0.3;
    double elbow_flex = 0.35;
    double elbow_bias = 0.15;
    double bob_fraction = 0.01; // vertical bob amplitude as a fraction of height
    bool sway = false;          // standing micro-motion
    double sway_amplitude = 0.01;
    double sway_frequency = 0.3;
};

struct SubjectSpec
{
    double height = 1.75;
    int class_label = 1;
    double speed = 1.0;
    Trajectory trajectory;
    GaitParams gait;

    bool standing() const { return speed == 0.0; }

    // Unit horizontal heading.
    Vec3 heading() const;

    // Ground point at time t (trajectory start + heading * speed * t).
    Vec3 ground_position(double t) const;

    // Throws ConfigError for bad values and BoundsError when the path leaves the room.
    void validate(const Room &room) const;
};

inline constexpr int human_primitive_count = 16;

inline constexpr std::array<std::string_view, human_primitive_count> primitive_names = {
    "head", "neck", "torso", "pelvis",
    "left_upper_arm", "left_forearm", "left_hand",
    "right_upper_arm", "right_forearm", "right_hand",
    "left_thigh", "left_shin", "left_foot",
    "right_thigh", "right_shin", "right_foot"};

namespace primitive {
inline constexpr int head = 0, neck = 1, torso = 2, pelvis = 3;
inline constexpr int left_upper_arm = 4, left_forearm = 5, left_hand = 6;
inline constexpr int right_upper_arm = 7, right_forearm = 8, right_hand = 9;
inline constexpr int left_thigh = 10, left_shin = 11, left_foot = 12;
inline constexpr int right_thigh = 13, right_shin = 14, right_foot = 15;
} // namespace primitive

// Ellipsoid primitive pose: center, unit long axis, and semi-axes
// (along the long axis, along body lateral, along axis x lateral).
struct PrimitivePose
{
    Vec3 center;
    Vec3 axis;
    Vec3 semi_axes;
};

using BodyPose = std::array<PrimitivePose, human_primitive_count>;

// Per-frame distances D_b(t_i), scattering gains G_b(t_i) and radial velocities, B x C.
struct PrimitiveTrack
{
    std::vector<double> frame_times;
    Eigen::MatrixXd distances;
    Eigen::MatrixXd gains;
    Eigen::MatrixXd radial_velocities;

    int primitive_count() const { return static_cast<int>(distances.rows()); }
    int frame_count() const { return static_cast<int>(distances.cols()); }
};

double stride_length(const SubjectSpec &subject);

// Limb oscillation period (stride / speed); 0 for a standing subject.
double gait_period(const SubjectSpec &subject);

// Upper bound on the speed of any primitive, used for the time-consistency check.
double max_primitive_speed(const SubjectSpec &subject);

BodyPose body_pose(const SubjectSpec &subject, double t);

// Geometric-optics monostatic RCS of an ellipsoid with the given semi-axes,
// viewed along `aspect` expressed in the ellipsoid's principal frame:
//   sigma = pi a^2 b^2 c^2 / (a^2 kx^2 + b^2 ky^2 + c^2 kz^2)^2
double primitive_gain(const Vec3 &semi_axes, const Vec3 &aspect);

// RCS of a posed primitive as seen from `radar`.
double primitive_gain(const PrimitivePose &pose, const Vec3 &lateral, const Vec3 &radar);

PrimitiveTrack build_walker(const SubjectSpec &subject, const Room &room, const Vec3 &radar_position,
                            std::span<const double> frame_times);

// Dump as CSV: frame_index,primitive_index,D,G,radial_velocity
void write_track_csv(const std::string &path, const PrimitiveTrack &track);

} // namespace wisim
