#include "axelrod/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "axelrod/error.hpp"

namespace axelrod {

namespace {

constexpr const char* kMagic = "axelrod-ips-log";
constexpr const char* kEventHeader = "time,source,target,feature,delta_w";

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

template <class Int>
Int parse_int(const std::string& s) {
    Int v{};
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw InvalidInput("event log: bad integer '" + s + "'");
    return v;
}

Topology make_topology(TopologyKind kind, std::size_t n) {
    return kind == TopologyKind::path ? Topology::path(n) : Topology::cycle(n);
}

void write_header(std::ostream& os, Model model, const Topology& topo, std::uint64_t seed, double end_time,
                  bool absorbed) {
    os << kMagic << ",1\n";
    os << "model," << to_string(model) << '\n';
    os << "topology," << to_string(topo.kind()) << ',' << topo.n() << '\n';
    os << "seed," << seed << '\n';
    os << "end_time," << format_double(end_time) << '\n';
    os << "absorbed," << (absorbed ? 1 : 0) << '\n';
}

class LineReader {
  public:
    explicit LineReader(std::istream& is) : is_(is) {}

    std::vector<std::string> next() {
        std::string line;
        if (!std::getline(is_, line)) throw InvalidInput("event log: unexpected end of file");
        ++line_no_;
        return split(line);
    }

    std::vector<std::string> expect(const std::string& key, std::size_t fields) {
        auto f = next();
        if (f.empty() || f[0] != key || f.size() != fields)
            throw InvalidInput("event log line " + std::to_string(line_no_) + ": expected '" + key + "'");
        return f;
    }

  private:
    std::istream& is_;
    std::size_t line_no_ = 0;
};

}  // namespace

std::string format_double(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, p);
}

double parse_double(const std::string& s) {
    double v = 0.0;
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw InvalidInput("bad number '" + s + "'");
    return v;
}

void write_event_log(std::ostream& os, const Trajectory& traj) {
    const Configuration& init = traj.initial;
    write_header(os, Model::axelrod, init.topology(), traj.seed, traj.end_time, traj.absorbed);
    os << "features," << init.params().features() << '\n';
    os << "states," << init.params().states() << '\n';
    os << "initial\n";
    for (Vertex x = 0; x < init.vertex_count(); ++x) {
        os << x;
        for (State s : init.culture(x)) os << ',' << s + 1;
        os << '\n';
    }
    os << "events," << traj.events.size() << '\n' << kEventHeader << '\n';
    for (const UpdateEvent& ev : traj.events)
        os << format_double(ev.time) << ',' << ev.source << ',' << ev.target << ',' << ev.feature + 1 << ','
           << ev.delta_w << '\n';
}

void write_event_log(std::ostream& os, const OpinionTrajectory& traj) {
    write_header(os, traj.model, traj.initial.topology, traj.seed, traj.end_time, traj.absorbed);
    os << "initial\n";
    for (Vertex x = 0; x < traj.initial.opinions.size(); ++x) os << x << ',' << traj.initial.opinions[x] << '\n';
    if (traj.model == Model::voter) {
        if (!traj.arrows) throw InvalidInput("voter trajectory has no arrow log to export");
        os << "events," << traj.arrows->arrows.size() << '\n' << kEventHeader << '\n';
        for (const Arrow& a : traj.arrows->arrows) os << format_double(a.time) << ',' << a.from << ',' << a.to << ",,\n";
    } else {
        os << "events," << traj.events.size() << '\n' << kEventHeader << '\n';
        for (const OpinionEvent& ev : traj.events)
            os << format_double(ev.time) << ',' << ev.source << ',' << ev.target << ",,\n";
    }
}

LoadedLog read_event_log(std::istream& is) {
    LineReader in(is);
    if (in.expect(kMagic, 2)[1] != "1") throw InvalidInput("event log: unsupported version");
    LoadedLog log;
    log.model = parse_model(in.expect("model", 2)[1]);
    const auto topo_fields = in.expect("topology", 3);
    const Topology topo = make_topology(parse_topology_kind(topo_fields[1]), parse_int<std::size_t>(topo_fields[2]));
    log.seed = parse_int<std::uint64_t>(in.expect("seed", 2)[1]);
    log.end_time = parse_double(in.expect("end_time", 2)[1]);
    log.absorbed = in.expect("absorbed", 2)[1] == "1";

    const std::size_t v = topo.vertex_count();
    if (log.model == Model::axelrod) {
        const int f = parse_int<int>(in.expect("features", 2)[1]);
        const int q = parse_int<int>(in.expect("states", 2)[1]);
        const ModelParams params(f, q);
        in.expect("initial", 1);
        std::vector<Culture> cultures(v);
        for (Vertex x = 0; x < v; ++x) {
            const auto row = in.next();
            if (row.size() != static_cast<std::size_t>(f) + 1 || parse_int<Vertex>(row[0]) != x)
                throw InvalidInput("event log: malformed initial row for vertex " + std::to_string(x));
            for (int i = 0; i < f; ++i) {
                const int s = parse_int<int>(row[static_cast<std::size_t>(i) + 1]);
                if (s < 1 || s > q) throw InvalidInput("event log: state out of range");
                cultures[x].push_back(static_cast<State>(s - 1));
            }
        }
        log.initial_config = Configuration(topo, params, cultures);
    } else {
        in.expect("initial", 1);
        std::vector<int> ops(v);
        for (Vertex x = 0; x < v; ++x) {
            const auto row = in.next();
            if (row.size() != 2 || parse_int<Vertex>(row[0]) != x)
                throw InvalidInput("event log: malformed initial row for vertex " + std::to_string(x));
            ops[x] = parse_int<int>(row[1]);
        }
        const auto alphabet = log.model == Model::voter ? OpinionAlphabet::binary : OpinionAlphabet::ternary;
        log.initial_opinions = OpinionConfig(topo, alphabet, std::move(ops));
    }

    const std::size_t count = parse_int<std::size_t>(in.expect("events", 2)[1]);
    in.expect("time", 5);
    OpinionConfig eta = log.initial_opinions ? *log.initial_opinions : OpinionConfig(topo, OpinionAlphabet::binary, std::vector<int>(v, 0));
    for (std::size_t k = 0; k < count; ++k) {
        const auto row = in.next();
        if (row.size() != 5) throw InvalidInput("event log: malformed event row " + std::to_string(k));
        const double t = parse_double(row[0]);
        const auto source = parse_int<Vertex>(row[1]);
        const auto target = parse_int<Vertex>(row[2]);
        if (source >= v || target >= v) throw InvalidInput("event log: vertex out of range");
        switch (log.model) {
            case Model::axelrod:
                log.events.push_back({t, target, source, parse_int<int>(row[3]) - 1, parse_int<int>(row[4])});
                break;
            case Model::voter:
                log.arrows.push_back({t, source, target, std::nullopt});
                break;
            case Model::constrained_voter:
                // Opinions are implied by replaying from the initial state.
                log.opinion_events.push_back({t, target, source, eta.opinions[target], eta.opinions[source]});
                eta.opinions[target] = eta.opinions[source];
                break;
        }
    }
    return log;
}

ArrowLog LoadedLog::arrow_log() const {
    if (model == Model::axelrod) {
        ArrowLog log{initial_config->topology(), {}, true, end_time};
        for (const UpdateEvent& ev : events) log.arrows.push_back({ev.time, ev.source, ev.target, ev.feature});
        return log;
    }
    if (model == Model::voter) return ArrowLog{initial_opinions->topology, arrows, false, end_time};
    throw InvalidInput("constrained-voter logs carry no graphical arrows");
}

std::variant<Configuration, OpinionConfig> LoadedLog::final_state() const {
    if (model == Model::axelrod) return replay(*initial_config, events);
    if (model == Model::constrained_voter) return replay(*initial_opinions, opinion_events);
    OpinionConfig eta = *initial_opinions;
    for (const Arrow& a : arrows) eta.opinions[a.to] = eta.opinions[a.from];
    return eta;
}

namespace {

void census_row(std::ostream& os, double t, const EdgeCensus& c, const DomainStats& d) {
    os << format_double(t);
    for (std::size_t w : c.counts) os << ',' << w;
    os << ',' << c.total_agreement << ',' << d.domain_count << ',' << format_double(d.mean_size()) << '\n';
}

}  // namespace

std::string snapshot_csv(const Trajectory& traj) {
    std::ostringstream os;
    os << 't';
    for (int j = 0; j <= traj.initial.params().features(); ++j) os << ",w_" << j;
    os << ",W,N_t,S_t\n";
    for (const Snapshot& s : traj.snapshots) census_row(os, s.time, s.census, s.domains);
    census_row(os, traj.end_time, edge_census(traj.final_state), count_domains(traj.final_state));
    return os.str();
}

std::string snapshot_csv(const OpinionTrajectory& traj) {
    std::ostringstream os;
    os << "t,interfaces,N_t,S_t\n";
    for (const OpinionSnapshot& s : traj.snapshots)
        os << format_double(s.time) << ',' << s.interfaces << ',' << s.domains.domain_count << ','
           << format_double(s.domains.mean_size()) << '\n';
    const DomainStats d = count_domains(traj.final_state);
    std::size_t interfaces = 0;
    const Topology& topo = traj.final_state.topology;
    for (std::size_t e = 0; e < topo.edge_count(); ++e) {
        const auto [u, w] = topo.endpoints(e);
        interfaces += traj.final_state.opinions[u] != traj.final_state.opinions[w];
    }
    os << format_double(traj.end_time) << ',' << interfaces << ',' << d.domain_count << ','
       << format_double(d.mean_size()) << '\n';
    return os.str();
}

std::string coupled_urn_csv(const CoupledUrnRun& run) {
    std::ostringstream os;
    os << "event";
    for (int j = 0; j <= run.final_state.features(); ++j) os << ",B_" << j;
    os << ",w_0,beta,epsilon\n";
    for (const CoupledUrnRow& row : run.rows) {
        os << row.event_index;
        for (std::size_t b : row.urn.boxes) os << ',' << b;
        os << ',' << row.w0 << ',' << row.beta << ',' << row.epsilon << '\n';
    }
    return os.str();
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::path tmp = path;
    tmp += ".partial";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        os.flush();
        if (!os) {
            os.close();
            std::filesystem::remove(tmp);
            throw Error("failed writing " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace axelrod
