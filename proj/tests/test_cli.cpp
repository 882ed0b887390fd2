#include <gtest/gtest.h>

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "sarc/agents/checkpoint.hpp"
#include "sarc/cli/commands.hpp"
#include "sarc/cli/config_file.hpp"
#include "sarc/cli/csv.hpp"
#include "sarc/cli/svg_plot.hpp"

using namespace sarc;
using namespace sarc::cli;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sarc_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Tiny but complete run: two seeds, a few hundred steps, small networks.
Overrides tiny_run(const fs::path& out) {
  return {{"run.output_dir", out.string()},
          {"run.seeds", "3,4"},
          {"run.total_steps", "300"},
          {"run.eval_interval", "100"},
          {"run.eval_episodes", "2"},
          {"run.checkpoint_interval", "150"},
          {"run.qerror_interval", "100"},
          {"run.qerror_episodes", "2"},
          {"agent.hidden_sizes", "16,16"},
          {"agent.batch_size", "16"},
          {"agent.start_steps", "100"},
          {"agent.update_after", "125"},
          {"agent.update_every", "25"},
          {"agent.num_updates", "5"},
          {"env.max_episode_steps", "50"}};
}

std::set<std::string> files_under(const fs::path& dir) {
  std::set<std::string> out;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) out.insert(fs::relative(e.path(), dir).generic_string());
  return out;
}

}  // namespace

TEST(KeyValueTree, ParsesSectionsAndComments) {
  std::istringstream in(
      "# top comment\n"
      "top = 1\n"
      "\n"
      "[agent]\n"
      "algorithm = sarc   \n"
      "; another comment\n"
      "hidden_sizes = 400, 300\n"
      "[run.extra]\n"
      "key=value with spaces\n");
  const auto t = KeyValueTree::parse(in);
  EXPECT_EQ(*t.find("top"), "1");
  EXPECT_EQ(*t.find("agent.algorithm"), "sarc");
  EXPECT_EQ(*t.find("agent.hidden_sizes"), "400, 300");
  EXPECT_EQ(*t.find("run.extra.key"), "value with spaces");
  EXPECT_EQ(t.find("missing"), nullptr);
}

TEST(KeyValueTree, RejectsMalformedInput) {
  std::istringstream dup("a = 1\na = 2\n");
  EXPECT_THROW(KeyValueTree::parse(dup), std::invalid_argument);
  std::istringstream noeq("[s]\njust words\n");
  EXPECT_THROW(KeyValueTree::parse(noeq), std::invalid_argument);
  std::istringstream badkey("bad key = 1\n");
  EXPECT_THROW(KeyValueTree::parse(badkey), std::invalid_argument);
  std::istringstream badsec("[oops\n");
  EXPECT_THROW(KeyValueTree::parse(badsec), std::invalid_argument);
}

TEST(KeyValueTree, WriteParseRoundTrip) {
  KeyValueTree t;
  t.set("env.name", "point-reacher");
  t.set("agent.alpha", "0.4");
  t.set("agent.kappa", "2");
  t.set("run.seeds", "0,1");
  std::stringstream ss;
  t.write(ss);
  const auto back = KeyValueTree::parse(ss);
  EXPECT_EQ(back.entries(), t.entries());
}

TEST(ExperimentConfig, DefaultsFollowDeskProtocol) {
  const auto c = ExperimentConfig::from_tree({});
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{0, 1, 2, 3, 4}));
  EXPECT_EQ(c.total_steps, 50000u);
  EXPECT_EQ(c.eval_interval, 2000u);
  EXPECT_EQ(c.eval_episodes, 10u);
  EXPECT_EQ(c.qerror_interval, 10000u);
  EXPECT_EQ(c.checkpoint_interval, 10000u);
  EXPECT_EQ(c.agent.kappa, 2.0);
  EXPECT_EQ(c.env_name, "pendulum-swingup");
}

TEST(ExperimentConfig, TreeRoundTrip) {
  KeyValueTree t;
  t.set("agent.algorithm", "delayed_sac");
  t.set("agent.alpha", "0.1");
  t.set("agent.hidden_sizes", "400,300");
  t.set("env.name", "cartpole-swingup");
  t.set("run.seeds", "7, 9");
  const auto c = ExperimentConfig::from_tree(t);
  EXPECT_EQ(c.agent.algorithm, agents::Algorithm::DelayedSAC);
  EXPECT_EQ(c.agent.critic_updates_per_actor_update, 2u);
  EXPECT_EQ(c.agent.hidden_sizes, (std::vector<int>{400, 300}));
  EXPECT_EQ(c.seeds, (std::vector<std::uint64_t>{7, 9}));
  const auto again = ExperimentConfig::from_tree(c.to_tree());
  EXPECT_EQ(again.to_tree().entries(), c.to_tree().entries());
}

TEST(ExperimentConfig, RejectsInvalid) {
  auto with = [](const std::string& k, const std::string& v) {
    KeyValueTree t;
    t.set(k, v);
    return t;
  };
  EXPECT_THROW(ExperimentConfig::from_tree(with("run.seeds", "1,1")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("run.seeds", "")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("run.total_steps", "-5")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("env.name", "bogus")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("agent.kappa", "0")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("agent.algorithm", "ppo")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("agent.nonsense", "1")), std::invalid_argument);
  EXPECT_THROW(ExperimentConfig::from_tree(with("run.qerror_interval", "3000")),
               std::invalid_argument);
  EXPECT_NO_THROW(ExperimentConfig::from_tree(with("manifest.build", "anything")));
}

TEST(Csv, RowsAndCurves) {
  std::istringstream in("env_step,mean,std\n10,1.5,0\n20,,1\n\n30,-2,0.5\n");
  const auto t = parse_csv(in);
  EXPECT_EQ(t.rows.size(), 3u);
  const auto c = t.curve("env_step", "mean");
  EXPECT_EQ(c.env_steps, (std::vector<std::size_t>{10, 30}));
  EXPECT_EQ(c.values, (std::vector<double>{1.5, -2.0}));
  EXPECT_THROW(t.column("nope"), std::runtime_error);
  std::istringstream ragged("a,b\n1\n");
  EXPECT_THROW(parse_csv(ragged), std::runtime_error);
  std::ostringstream out;
  write_csv_row(out, {"1", "", "x"});
  EXPECT_EQ(out.str(), "1,,x\n");
}

TEST(FormatNumber, ShortestRoundTrip) {
  for (double v : {0.1, -1234.5678, 1e-300, 3.0, 1.0 / 3.0}) EXPECT_EQ(std::stod(format_number(v)), v);
  EXPECT_EQ(format_number(3.0), "3");
}

TEST(SvgPlot, WellFormedWithLegendPerSeries) {
  PlotSeries flat{"flat", {0, 1000, 2000}, {5.0, 5.0, 5.0}, {0.0, 0.0, 0.0}};
  PlotSeries other{"a & <b>", {0, 1000, 2000}, {1.0, 3.0, 2.0}, {0.5, 0.2, 0.1}};
  std::stringstream ss;
  write_svg_plot(ss, {flat, other});
  boost::property_tree::ptree tree;
  ASSERT_NO_THROW(boost::property_tree::read_xml(ss, tree));
  int legend_entries = 0, polylines = 0;
  for (const auto& g : tree.get_child("svg")) {
    if (g.first != "g") continue;
    const auto cls = g.second.get<std::string>("<xmlattr>.class", "");
    for (const auto& child : g.second) {
      if (cls == "legend" && child.first == "text") ++legend_entries;
      if (cls == "series" && child.first == "polyline") ++polylines;
    }
  }
  EXPECT_EQ(legend_entries, 2);
  EXPECT_EQ(polylines, 2);
  EXPECT_NE(ss.str().find("a &amp; &lt;b&gt;"), std::string::npos);
  EXPECT_NE(ss.str().find(">env steps<"), std::string::npos);
  EXPECT_NE(ss.str().find(">return<"), std::string::npos);
}

TEST(SvgPlot, FlatCurveIsHorizontalWithZeroBand) {
  PlotSeries flat{"flat", {0, 10, 20}, {5.0, 5.0, 5.0}, {0.0, 0.0, 0.0}};
  std::stringstream ss;
  write_svg_plot(ss, {flat});
  boost::property_tree::ptree tree;
  boost::property_tree::read_xml(ss, tree);
  for (const auto& g : tree.get_child("svg")) {
    if (g.first != "g" || g.second.get<std::string>("<xmlattr>.class", "") != "series") continue;
    const auto points = g.second.get<std::string>("polyline.<xmlattr>.points");
    std::set<std::string> ys;
    std::istringstream ps(points);
    std::string pt;
    while (ps >> pt) ys.insert(pt.substr(pt.find(',') + 1));
    EXPECT_EQ(ys.size(), 1u);
    const auto band = g.second.get<std::string>("polygon.<xmlattr>.points");
    std::istringstream bs(band);
    std::set<std::string> band_ys;
    while (bs >> pt) band_ys.insert(pt.substr(pt.find(',') + 1));
    EXPECT_EQ(band_ys, ys);
  }
}

TEST(SvgPlot, RejectsEmpty) {
  std::stringstream ss;
  EXPECT_THROW(write_svg_plot(ss, {}), std::invalid_argument);
}

TEST(Train, ZeroStepsGivesHeaderOnlyCsvs) {
  const fs::path dir = scratch("zero");
  auto ov = tiny_run(dir);
  ov.push_back({"run.total_steps", "0"});
  const auto res = cmd_train(std::nullopt, ov);
  ASSERT_EQ(res.seeds.size(), 2u);
  EXPECT_TRUE(res.seeds[0].ok);
  EXPECT_EQ(slurp(dir / "seed_3.csv"), std::string(kSeedCsvHeader) + "\n");
  EXPECT_EQ(slurp(dir / "aggregate.csv"), std::string(kAggregateCsvHeader) + "\n");
  const auto manifest = KeyValueTree::parse_file(dir / "manifest.txt");
  EXPECT_EQ(*manifest.find("manifest.status"), "complete");
  EXPECT_EQ(*manifest.find("run.total_steps"), "0");
}

TEST(Train, ArtifactsAreDeterministicAndListed) {
  const fs::path a = scratch("det_a");
  const fs::path b = scratch("det_b");
  cmd_train(std::nullopt, tiny_run(a));
  cmd_train(std::nullopt, tiny_run(b));
  const auto files = files_under(a);
  EXPECT_EQ(files, files_under(b));
  for (const auto& f : files) {
    if (f == "manifest.txt") continue;
    EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
  }
  const auto manifest = KeyValueTree::parse_file(a / "manifest.txt");
  std::set<std::string> listed;
  for (const auto& [k, v] : manifest.entries())
    if (k.rfind("manifest.files.", 0) == 0) listed.insert(v);
  EXPECT_EQ(listed, files);
  EXPECT_TRUE(files.count("checkpoints/seed_3/step_150.ckpt"));
  EXPECT_TRUE(files.count("checkpoints/seed_4/step_300.ckpt"));

  const auto csv = read_csv(a / "seed_3.csv");
  EXPECT_EQ(csv.rows.size(), 3u);
  EXPECT_EQ(csv.rows[0][0], "100");
  EXPECT_EQ(csv.rows[0][3], "");
  EXPECT_NE(csv.rows[1][3], "");
  EXPECT_NE(csv.rows[2][8], "");
  const auto agg = read_csv(a / "aggregate.csv");
  EXPECT_EQ(agg.rows.size(), 3u);
}

TEST(Train, ManifestReproducesRun) {
  const fs::path a = scratch("manifest_a");
  cmd_train(std::nullopt, tiny_run(a));
  const fs::path b = scratch("manifest_b");
  cmd_train(a / "manifest.txt", {{"run.output_dir", b.string()}});
  EXPECT_EQ(slurp(a / "seed_4.csv"), slurp(b / "seed_4.csv"));
  EXPECT_EQ(slurp(a / "aggregate.csv"), slurp(b / "aggregate.csv"));
}

TEST(Train, ParallelSeedsMatchSequential) {
  const fs::path a = scratch("jobs_1");
  const fs::path b = scratch("jobs_2");
  cmd_train(std::nullopt, tiny_run(a));
  auto ov = tiny_run(b);
  ov.push_back({"run.jobs", "2"});
  cmd_train(std::nullopt, ov);
  EXPECT_EQ(slurp(a / "seed_3.csv"), slurp(b / "seed_3.csv"));
  EXPECT_EQ(slurp(a / "seed_4.csv"), slurp(b / "seed_4.csv"));
}

TEST(Train, FailedSeedIsRecordedAndSkipped) {
  const fs::path dir = scratch("failed");
  fs::create_directories(dir / "checkpoints");
  std::ofstream(dir / "checkpoints" / "seed_4") << "blocks the checkpoint directory";
  const auto res = cmd_train(std::nullopt, tiny_run(dir));
  EXPECT_TRUE(res.seeds[0].ok);
  EXPECT_FALSE(res.seeds[1].ok);
  const auto manifest = KeyValueTree::parse_file(dir / "manifest.txt");
  EXPECT_EQ(*manifest.find("manifest.status"), "partial");
  EXPECT_EQ(manifest.find("manifest.seeds.4")->rfind("failed", 0), 0u);
  // Aggregate falls back to the surviving seed.
  const auto agg = read_csv(dir / "aggregate.csv");
  const auto seed3 = read_csv(dir / "seed_3.csv");
  ASSERT_EQ(agg.rows.size(), seed3.rows.size());
  EXPECT_EQ(agg.rows[0][1], seed3.rows[0][1]);
}

TEST(EvalCommand, MatchesTrainingRow) {
  const fs::path dir = scratch("eval");
  cmd_train(std::nullopt, tiny_run(dir));
  std::ostringstream out;
  const auto rec = cmd_eval(dir / "checkpoints/seed_3/step_300.ckpt", "", 2, 3, out);
  EXPECT_EQ(rec.env_step, 300u);
  const auto train_csv = read_csv(dir / "seed_3.csv");
  EXPECT_EQ(format_number(rec.mean_return), train_csv.rows[2][1]);
  std::istringstream back(out.str());
  const auto t = parse_csv(back);
  EXPECT_EQ(t.header.size(), 4u);
  EXPECT_EQ(t.rows[0][0], "300");
  EXPECT_THROW(cmd_eval(dir / "checkpoints/seed_3/step_300.ckpt", "point-reacher", 2, 3, out),
               std::runtime_error);
  EXPECT_THROW(cmd_eval(dir / "seed_3.csv", "", 2, 3, out), std::runtime_error);
}

TEST(QErrorCommand, SortedRowsMatchDirectCalls) {
  const fs::path dir = scratch("qerror");
  cmd_train(std::nullopt, tiny_run(dir));
  std::ostringstream out;
  const auto recs = cmd_qerror(dir / "checkpoints/seed_4", "", 0.99, 2, 4, out);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].env_step, 150u);
  EXPECT_EQ(recs[1].env_step, 300u);
  const auto ckpt = agents::load_checkpoint(dir / "checkpoints/seed_4/step_300.ckpt");
  const auto agent = agents::restore_agent(ckpt);
  envs::EnvConfig cfg;
  cfg.max_episode_steps = 50;
  auto env = envs::make_env(ckpt.env_name, cfg);
  Rng rng = Rng::stream(4, kQErrorStream);
  EXPECT_EQ(eval::q_error(*env, *agent, 0.99, 2, rng, 300).q_error, recs[1].q_error);
  const auto train_csv = read_csv(dir / "seed_4.csv");
  EXPECT_EQ(format_number(recs[1].q_error), train_csv.rows[2][8]);
  const fs::path single = scratch("qerror_single");
  fs::copy(dir / "checkpoints/seed_4/step_150.ckpt", single / "step_150.ckpt");
  std::ostringstream one;
  EXPECT_EQ(cmd_qerror(single, "", 0.99, 2, 4, one).size(), 1u);
  const fs::path empty = scratch("qerror_empty");
  EXPECT_THROW(cmd_qerror(empty, "", 0.99, 2, 4, one), std::runtime_error);
}

TEST(PlotCommand, AcceptsTrainOutputUnmodified) {
  const fs::path dir = scratch("plot");
  cmd_train(std::nullopt, tiny_run(dir));
  cmd_plot({dir / "aggregate.csv", dir / "seed_3.csv"}, {"agg", "seed 3"}, dir / "out.svg");
  std::ifstream in(dir / "out.svg");
  boost::property_tree::ptree tree;
  EXPECT_NO_THROW(boost::property_tree::read_xml(in, tree));
  EXPECT_THROW(cmd_plot({}, {}, dir / "x.svg"), std::invalid_argument);
  EXPECT_THROW(cmd_plot({dir / "aggregate.csv"}, {"a", "b"}, dir / "x.svg"),
               std::invalid_argument);
  std::ofstream(dir / "bad.csv") << "env_step,mean,std\n1,2\n";
  EXPECT_THROW(cmd_plot({dir / "bad.csv"}, {}, dir / "x.svg"), std::runtime_error);
}
