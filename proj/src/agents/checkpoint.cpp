#include "sarc/agents/checkpoint.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "sarc/nnet/serialize.hpp"

namespace sarc::agents {

Checkpoint Checkpoint::capture(const Agent& agent, std::size_t env_step) {
  Checkpoint c;
  c.algorithm = agent.config().algorithm;
  c.env_name = agent.env_spec().name;
  c.env_step = env_step;
  c.env_spec = agent.env_spec();
  c.networks = agent.networks();
  return c;
}

namespace {

void write_vector(std::ostream& out, const char* key, const Vector& v) {
  out << key;
  for (Eigen::Index i = 0; i < v.size(); ++i) out << ' ' << nnet::format_hex(v[i]);
  out << '\n';
}

std::string read_key(std::istream& in, const std::string& expected) {
  std::string key;
  if (!(in >> key) || key != expected)
    throw std::runtime_error("checkpoint: expected '" + expected + "', found '" + key + "'");
  std::string value;
  if (!(in >> value)) throw std::runtime_error("checkpoint: missing value for '" + expected + "'");
  return value;
}

std::size_t to_count(const std::string& s) {
  std::size_t pos = 0;
  const unsigned long long v = std::stoull(s, &pos);
  if (pos != s.size()) throw std::runtime_error("checkpoint: malformed count '" + s + "'");
  return static_cast<std::size_t>(v);
}

}  // namespace

void write_checkpoint(std::ostream& out, const Checkpoint& ckpt) {
  out << "sarc-checkpoint 1\n"
      << "algorithm " << to_string(ckpt.algorithm) << '\n'
      << "env " << ckpt.env_name << '\n'
      << "env_step " << ckpt.env_step << '\n'
      << "obs_dim " << ckpt.env_spec.obs_dim << '\n'
      << "max_episode_steps " << ckpt.env_spec.max_episode_steps << '\n';
  write_vector(out, "action_low", ckpt.env_spec.action_low);
  write_vector(out, "action_high", ckpt.env_spec.action_high);
  out << "networks " << ckpt.networks.size() << '\n';
  for (const auto& [name, net] : ckpt.networks) {
    out << "network " << name << '\n';
    nnet::save_mlp(out, net);
  }
  out << "end-checkpoint\n";
}

Checkpoint read_checkpoint(std::istream& in) {
  Checkpoint c;
  if (read_key(in, "sarc-checkpoint") != "1")
    throw std::runtime_error("checkpoint: unsupported version");
  c.algorithm = algorithm_from_string(read_key(in, "algorithm"));
  c.env_name = read_key(in, "env");
  c.env_step = to_count(read_key(in, "env_step"));
  c.env_spec.name = c.env_name;
  c.env_spec.obs_dim = static_cast<int>(to_count(read_key(in, "obs_dim")));
  c.env_spec.max_episode_steps = static_cast<int>(to_count(read_key(in, "max_episode_steps")));
  if (c.env_spec.max_episode_steps < 1) throw std::runtime_error("checkpoint: bad max_episode_steps");

  // Action bound lines: key followed by act_dim values up to end of line.
  auto read_line_vector = [&](const std::string& key) {
    std::string tok;
    if (!(in >> tok) || tok != key)
      throw std::runtime_error("checkpoint: expected '" + key + "', found '" + tok + "'");
    std::string rest;
    std::getline(in, rest);
    std::istringstream ls(rest);
    std::vector<double> vals;
    while (ls >> tok) vals.push_back(nnet::parse_double(tok));
    return Vector(Eigen::Map<Vector>(vals.data(), static_cast<Eigen::Index>(vals.size())));
  };
  c.env_spec.action_low = read_line_vector("action_low");
  c.env_spec.action_high = read_line_vector("action_high");
  if (c.env_spec.action_low.size() == 0 ||
      c.env_spec.action_low.size() != c.env_spec.action_high.size())
    throw std::runtime_error("checkpoint: malformed action bounds");
  c.env_spec.act_dim = static_cast<int>(c.env_spec.action_low.size());

  const std::size_t n = to_count(read_key(in, "networks"));
  for (std::size_t i = 0; i < n; ++i) {
    const std::string name = read_key(in, "network");
    c.networks.emplace(name, nnet::load_mlp(in));
  }
  std::string tail;
  if (!(in >> tail) || tail != "end-checkpoint")
    throw std::runtime_error("checkpoint: missing end-checkpoint marker (truncated file?)");
  return c;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint " + path.string());
  write_checkpoint(out, ckpt);
  if (!out) throw std::runtime_error("error writing checkpoint " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint " + path.string());
  try {
    return read_checkpoint(in);
  } catch (const std::exception& e) {
    throw std::runtime_error(path.string() + ": " + e.what());
  }
}

std::unique_ptr<Agent> restore_agent(const Checkpoint& ckpt, AgentConfig config) {
  config.algorithm = ckpt.algorithm;
  auto actor = ckpt.networks.find("actor");
  if (actor == ckpt.networks.end()) throw std::runtime_error("checkpoint: missing actor network");
  const auto& sizes = actor->second.layer_sizes();
  config.hidden_sizes.assign(sizes.begin() + 1, sizes.end() - 1);
  Rng scratch(0);
  auto agent = make_agent(config, ckpt.env_spec, scratch);
  agent->load_networks(ckpt.networks);
  return agent;
}

std::unique_ptr<Agent> restore_agent(const Checkpoint& ckpt) {
  return restore_agent(ckpt, AgentConfig::for_algorithm(ckpt.algorithm));
}

}  // namespace sarc::agents
