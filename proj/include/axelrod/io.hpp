#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "axelrod/engine.hpp"
#include "axelrod/stats.hpp"
#include "axelrod/urn.hpp"

namespace axelrod {

/// Shortest decimal that parses back to the same double.
std::string format_double(double x);
double parse_double(const std::string& s);

/// Event-log text format. Header lines are `key,value...`; then
/// `initial` followed by one `vertex,state_1,...,state_F` row per vertex
/// (Axelrod states rendered 1-based, opinions as-is); then `events,<count>`,
/// the column header `time,source,target,feature,delta_w` and one row per
/// record. Features are 1-based. Voter logs hold every graphical arrow with
/// the last two columns empty; constrained-voter logs hold opinion changes.
void write_event_log(std::ostream& os, const Trajectory& traj);
void write_event_log(std::ostream& os, const OpinionTrajectory& traj);

struct LoadedLog {
    Model model;
    std::uint64_t seed = 0;
    double end_time = 0.0;
    bool absorbed = false;
    std::optional<Configuration> initial_config;  // axelrod
    std::optional<OpinionConfig> initial_opinions;  // voter, cvm
    std::vector<UpdateEvent> events;                // axelrod
    std::vector<OpinionEvent> opinion_events;       // cvm
    std::vector<Arrow> arrows;                      // voter

    /// Labelled log for axelrod, arrow log for voter. InvalidInput for cvm.
    ArrowLog arrow_log() const;
    /// Replay of the whole log from the initial state.
    std::variant<Configuration, OpinionConfig> final_state() const;
};

LoadedLog read_event_log(std::istream& is);

/// Columns `t,w_0,...,w_F,W,N_t,S_t`: every snapshot, then the final state
/// at end_time.
std::string snapshot_csv(const Trajectory& traj);
/// Columns `t,interfaces,N_t,S_t`.
std::string snapshot_csv(const OpinionTrajectory& traj);

/// Columns `event,B_0,...,B_F,w_0,beta,epsilon`, one row per checked state.
/// Needs a run made with keep_rows.
std::string coupled_urn_csv(const CoupledUrnRun& run);

/// Write to `path` via a temporary sibling and rename, so readers never see a
/// truncated file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace axelrod
