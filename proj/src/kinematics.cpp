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

#include "wisim/kinematics.hpp"
#include "wisim/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>

namespace wisim {

namespace {

constexpr double pi = std::numbers::pi;
const Vec3 up{0.0, 0.0, 1.0};

// Body proportions as fractions of height.
namespace body {
constexpr double head_z = 0.93, head_r = 0.065;
constexpr double neck_z = 0.855, neck_half = 0.025, neck_r = 0.03;
constexpr double torso_z = 0.70, torso_half = 0.14, torso_r = 0.085;
constexpr double pelvis_z = 0.55, pelvis_half = 0.05, pelvis_r = 0.09;
constexpr double hip_z = 0.53, hip_half_width = 0.09;
constexpr double shoulder_z = 0.818, shoulder_half_width = 0.13;
constexpr double thigh = 0.245, thigh_r = 0.04;
constexpr double shin = 0.246, shin_r = 0.03;
constexpr double foot = 0.152, foot_r = 0.025;
constexpr double upper_arm = 0.186, upper_arm_r = 0.025;
constexpr double forearm = 0.146, forearm_r = 0.02;
constexpr double hand = 0.108, hand_r = 0.02;
} // namespace body

// Direction in the sagittal plane at angle `a` from straight down, positive forward.
Vec3 limb_dir(const Vec3 &fwd, double a)
{
    return -up * std::cos(a) + fwd * std::sin(a);
}

double amplitude_scale(const SubjectSpec &s)
{
    if (s.standing())
        return 0.0;
    return std::clamp(s.speed, s.gait.speed_clip_min, s.gait.speed_clip_max);
}

Vec3 lateral_of(const Vec3 &heading)
{
    return up.cross(heading).normalized();
}

} // namespace

bool Room::contains(const Vec3 &p, double tol) const
{
    for (int k = 0; k < 3; ++k)
        if (p[k] < -tol || p[k] > size[k] + tol)
            return false;
    return true;
}

void Room::validate() const
{
    if (!(size.array() > 0.0).all())
        throw ConfigError("room dimensions must be positive");
}

Vec3 SubjectSpec::heading() const
{
    Vec3 d = trajectory.direction;
    if (std::abs(d.z()) > 1e-12)
        throw ConfigError("trajectory direction must be horizontal");
    if (d.norm() == 0.0)
        throw ConfigError("trajectory direction must be non-zero");
    return d.normalized();
}

Vec3 SubjectSpec::ground_position(double t) const
{
    return trajectory.start + heading() * (speed * t);
}

void SubjectSpec::validate(const Room &room) const
{
    if (!(height > 0.0))
        throw ConfigError("subject height must be positive");
    if (!(speed >= 0.0))
        throw ConfigError("subject speed must be non-negative");
    if (!(trajectory.duration >= 0.0))
        throw ConfigError("trajectory duration must be non-negative");
    if (class_label < 1)
        throw ConfigError("class label must be >= 1");
    if (!(gait.stride_factor > 0.0) || !(gait.speed_clip_min > 0.0) || gait.speed_clip_max < gait.speed_clip_min)
        throw ConfigError("invalid gait stride parameters");
    heading(); // throws on a degenerate direction
    if (!room.contains(trajectory.start))
        throw BoundsError("trajectory start lies outside the room");
    if (!room.contains(ground_position(trajectory.duration)))
        throw BoundsError("trajectory exits the room before its duration ends");
}

double stride_length(const SubjectSpec &s)
{
    double v = std::clamp(s.speed, s.gait.speed_clip_min, s.gait.speed_clip_max);
    return s.gait.stride_factor * s.height * v;
}

double gait_period(const SubjectSpec &s)
{
    if (s.standing())
        return 0.0;
    return stride_length(s) / s.speed;
}

double max_primitive_speed(const SubjectSpec &s)
{
    const auto &g = s.gait;
    const double h = s.height;
    double bound = s.speed;
    if (g.sway && s.standing())
        bound += 2.0 * pi * g.sway_frequency * g.sway_amplitude;
    if (s.standing())
        return bound;

    const double a = amplitude_scale(s);
    const double w = 2.0 * pi / gait_period(s);
    // Each point moves no faster than the sum over joints of angular rate times lever arm.
    double bob = 2.0 * w * g.bob_fraction * a * h;
    double leg = w * a * (g.hip_swing * (body::thigh + body::shin + body::foot) + 0.5 * g.knee_flex * (body::shin + body::foot)) * h;
    double arm = w * a * (g.arm_swing * (body::upper_arm + body::forearm + body::hand) + 0.5 * g.elbow_flex * (body::forearm + body::hand)) * h;
    return bound + bob + std::max(leg, arm);
}

BodyPose body_pose(const SubjectSpec &s, double t)
{
    const auto &g = s.gait;
    const double h = s.height;
    const Vec3 fwd = s.heading();
    const Vec3 lat = lateral_of(fwd);
    const double a = amplitude_scale(s);
    const double psi = s.standing() ? 0.0 : 2.0 * pi * t / gait_period(s);

    Vec3 ground = s.ground_position(t);
    Vec3 upper = ground;
    Vec3 lift = up * (g.bob_fraction * a * h * std::cos(2.0 * psi));
    if (g.sway && s.standing())
        upper += fwd * (g.sway_amplitude * std::sin(2.0 * pi * g.sway_frequency * t));

    BodyPose pose;
    auto trunk = [&](int idx, double z, double half, double r) {
        pose[idx] = {upper + lift + up * (z * h), up, Vec3(half * h, r * h, r * h)};
    };
    trunk(primitive::head, body::head_z, body::head_r, body::head_r);
    trunk(primitive::neck, body::neck_z, body::neck_half, body::neck_r);
    trunk(primitive::torso, body::torso_z, body::torso_half, body::torso_r);
    trunk(primitive::pelvis, body::pelvis_z, body::pelvis_half, body::pelvis_r);

    for (int side = 0; side < 2; ++side)
    {
        const double sign = side == 0 ? 1.0 : -1.0; // left is +lateral
        const double phase = psi + (side == 0 ? 0.0 : pi);

        // Leg.
        double hip_a = a * g.hip_swing * std::sin(phase);
        double knee_a = a * g.knee_flex * 0.5 * (1.0 - std::cos(phase));
        Vec3 hip = ground + lift + up * (body::hip_z * h) + lat * (sign * body::hip_half_width * h);
        Vec3 thigh_u = limb_dir(fwd, hip_a);
        Vec3 knee = hip + thigh_u * (body::thigh * h);
        Vec3 shin_u = limb_dir(fwd, hip_a - knee_a);
        Vec3 ankle = knee + shin_u * (body::shin * h);
        Vec3 foot_u = (fwd * std::cos(hip_a - knee_a) + up * std::sin(hip_a - knee_a)).normalized();

        const int thigh_i = side == 0 ? primitive::left_thigh : primitive::right_thigh;
        pose[thigh_i] = {hip + thigh_u * (0.5 * body::thigh * h), thigh_u,
                         Vec3(0.5 * body::thigh * h, body::thigh_r * h, body::thigh_r * h)};
        pose[thigh_i + 1] = {knee + shin_u * (0.5 * body::shin * h), shin_u,
                             Vec3(0.5 * body::shin * h, body::shin_r * h, body::shin_r * h)};
        pose[thigh_i + 2] = {ankle + foot_u * (0.5 * body::foot * h), foot_u,
                             Vec3(0.5 * body::foot * h, body::foot_r * h, body::foot_r * h)};

        // Arm swings against the same-side leg.
        double arm_phase = phase + pi;
        double shoulder_a = a * g.arm_swing * std::sin(arm_phase);
        double elbow_a = g.elbow_bias + a * g.elbow_flex * 0.5 * (1.0 - std::cos(arm_phase));
        Vec3 shoulder = upper + lift + up * (body::shoulder_z * h) + lat * (sign * body::shoulder_half_width * h);
        Vec3 upper_u = limb_dir(fwd, shoulder_a);
        Vec3 elbow = shoulder + upper_u * (body::upper_arm * h);
        Vec3 fore_u = limb_dir(fwd, shoulder_a + elbow_a);
        Vec3 wrist = elbow + fore_u * (body::forearm * h);

        const int arm_i = side == 0 ? primitive::left_upper_arm : primitive::right_upper_arm;
        pose[arm_i] = {shoulder + upper_u * (0.5 * body::upper_arm * h), upper_u,
                       Vec3(0.5 * body::upper_arm * h, body::upper_arm_r * h, body::upper_arm_r * h)};
        pose[arm_i + 1] = {elbow + fore_u * (0.5 * body::forearm * h), fore_u,
                           Vec3(0.5 * body::forearm * h, body::forearm_r * h, body::forearm_r * h)};
        pose[arm_i + 2] = {wrist + fore_u * (0.5 * body::hand * h), fore_u,
                           Vec3(0.5 * body::hand * h, body::hand_r * h, body::hand_r * h)};
    }
    return pose;
}

double primitive_gain(const Vec3 &semi_axes, const Vec3 &aspect)
{
    if (!(semi_axes.array() > 0.0).all())
        throw RangeError("ellipsoid semi-axes must be positive");
    double n = aspect.norm();
    if (!(std::abs(n - 1.0) < 1e-6))
        throw RangeError("aspect must be a unit vector");
    const double a = semi_axes.x(), b = semi_axes.y(), c = semi_axes.z();
    const Vec3 k = aspect / n;
    double q = a * a * k.x() * k.x() + b * b * k.y() * k.y() + c * c * k.z() * k.z();
    return pi * (a * a) * (b * b) * (c * c) / (q * q);
}

double primitive_gain(const PrimitivePose &pose, const Vec3 &lateral, const Vec3 &radar)
{
    Vec3 los = (radar - pose.center).normalized();
    // Principal frame: long axis, lateral made orthogonal to it, and their cross product.
    Vec3 e1 = pose.axis.normalized();
    Vec3 e2 = lateral - e1 * e1.dot(lateral);
    if (e2.norm() < 1e-9)
        e2 = e1.unitOrthogonal();
    e2.normalize();
    Vec3 e3 = e1.cross(e2);
    Vec3 k(los.dot(e1), los.dot(e2), los.dot(e3));
    return primitive_gain(pose.semi_axes, k.normalized());
}

PrimitiveTrack build_walker(const SubjectSpec &subject, const Room &room, const Vec3 &radar_position,
                            std::span<const double> frame_times)
{
    room.validate();
    subject.validate(room);
    if (frame_times.empty())
        throw RangeError("frame_times must not be empty");
    for (std::size_t i = 1; i < frame_times.size(); ++i)
        if (!(frame_times[i] > frame_times[i - 1]))
            throw RangeError("frame_times must be strictly increasing");
    if (frame_times.front() < 0.0 || frame_times.back() > subject.trajectory.duration + 1e-9)
        throw BoundsError("frame times extend beyond the trajectory duration");

    const int C = static_cast<int>(frame_times.size());
    const int B = human_primitive_count;
    const Vec3 lat = lateral_of(subject.heading());
    constexpr double dt = 1e-5;

    PrimitiveTrack track;
    track.frame_times.assign(frame_times.begin(), frame_times.end());
    track.distances.resize(B, C);
    track.gains.resize(B, C);
    track.radial_velocities.resize(B, C);

    for (int i = 0; i < C; ++i)
    {
        const double t = frame_times[i];
        BodyPose pose = body_pose(subject, t);
        BodyPose before = body_pose(subject, t - dt);
        BodyPose after = body_pose(subject, t + dt);
        for (int b = 0; b < B; ++b)
        {
            double d = (pose[b].center - radar_position).norm();
            if (!(d > 0.0))
                throw BoundsError("primitive coincides with the radar position");
            track.distances(b, i) = d;
            track.gains(b, i) = primitive_gain(pose[b], lat, radar_position);
            double d_before = (before[b].center - radar_position).norm();
            double d_after = (after[b].center - radar_position).norm();
            track.radial_velocities(b, i) = (d_after - d_before) / (2.0 * dt);
        }
    }
    return track;
}

void write_track_csv(const std::string &path, const PrimitiveTrack &track)
{
    std::ofstream out(path);
    if (!out)
        throw IoError("cannot open " + path + " for writing");
    out << "frame_index,primitive_index,D,G,radial_velocity\n";
    out << std::setprecision(17);
    for (int i = 0; i < track.frame_count(); ++i)
        for (int b = 0; b < track.primitive_count(); ++b)
            out << i << ',' << b << ',' << track.distances(b, i) << ',' << track.gains(b, i) << ','
                << track.radial_velocities(b, i) << '\n';
    if (!out)
        throw IoError("write failed: " + path);
}

} // namespace wisim
