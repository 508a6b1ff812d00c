#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bpdep/cli/commands.hpp"
#include "bpdep/cli/csv.hpp"
#include "bpdep/cli/report.hpp"
#include "bpdep/synthlab.hpp"

using namespace bpdep;
using namespace bpdep::cli;

namespace {

class TempFile {
public:
    explicit TempFile(const std::string& name, const std::string& text)
        : path_(std::filesystem::temp_directory_path() / name) {
        std::ofstream(path_) << text;
    }
    ~TempFile() { std::filesystem::remove(path_); }
    std::string path() const { return path_.string(); }

private:
    std::filesystem::path path_;
};

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_config(const RunConfig& c) {
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

std::string example2_csv() {
    std::string s = "outcome,parity\n";
    for (int x = 1; x <= 4; ++x) s += std::to_string(x) + "," + std::to_string(x % 2) + "\n";
    return s;
}

}  // namespace

TEST(Csv, ParsesHeaderAndTrimsCells) {
    std::istringstream in("a, b\r\n1, x\n\n2,y\n");
    const auto t = read_csv(in);
    EXPECT_EQ(t.header, (std::vector<std::string>{"a", "b"}));
    ASSERT_EQ(t.rows.size(), 2u);
    EXPECT_EQ(t.rows[0][1], "x");
}

TEST(Csv, RaggedRowIsAnError) {
    std::istringstream in("a,b\n1,2,3\n");
    EXPECT_THROW(read_csv(in), CsvFormatError);
    std::istringstream empty("");
    EXPECT_THROW(read_csv(empty), CsvFormatError);
}

TEST(Csv, ColumnByNameOrIndexAndKinds) {
    std::string text = "id,val,tag\n";
    for (int i = 0; i < 30; ++i) text += std::to_string(i % 3) + "," + std::to_string(i * 0.5) + ",t" + std::to_string(i % 2) + "\n";
    std::istringstream in(text);
    const auto t = read_csv(in);
    EXPECT_EQ(resolve_column(t, "val", KindRequest::Auto).kind(), ColumnKind::Continuous);
    EXPECT_EQ(resolve_column(t, "0", KindRequest::Auto).kind(), ColumnKind::Discrete);  // 3 distinct values
    EXPECT_EQ(resolve_column(t, "1", KindRequest::Auto, 40).kind(), ColumnKind::Discrete);
    EXPECT_EQ(resolve_column(t, "tag", KindRequest::Auto).kind(), ColumnKind::Discrete);
    EXPECT_EQ(resolve_column(t, "id", KindRequest::Continuous).kind(), ColumnKind::Continuous);
    EXPECT_THROW(resolve_column(t, "tag", KindRequest::Continuous), KindConflictError);
    EXPECT_THROW(resolve_column(t, "missing", KindRequest::Auto), UnknownColumnError);
    EXPECT_THROW(resolve_column(t, "3", KindRequest::Auto), UnknownColumnError);
}

TEST(Csv, SampleRoundTripGivesIdenticalEstimates) {
    const auto s = sample(GeneratorSpec{.id = GeneratorId::NoisyUniform, .n = 500, .seed = 3});
    std::ostringstream out;
    write_samples_csv(out, s);
    std::istringstream in(out.str());
    const auto t = read_csv(in);
    const SampleTable back(resolve_column(t, "x", KindRequest::Auto), resolve_column(t, "y", KindRequest::Auto));
    EXPECT_EQ(back.x().values(), s.x().values());
    EXPECT_EQ(back.y().values(), s.y().values());
    EXPECT_EQ(*dep_binned(back, {}).score, *dep_binned(s, {}).score);
    EXPECT_EQ(*dep_kde(back, KdeSpec{.resolution = 64}).score, *dep_kde(s, KdeSpec{.resolution = 64}).score);
}

TEST(Report, FormatsAndOrdersFields) {
    EXPECT_EQ(format_number(2.0 / 3.0), "0.666666666667");
    EXPECT_THROW(format_number(NAN), std::logic_error);
    Report r;
    r.config.emplace_back("command", std::string("compute"));
    r.results.push_back(DepEntry{"bp", DepResult{std::nullopt, 0.0, 0.0, Method::Binned, Direction::YonX, {}}});
    r.warnings.push_back("w");
    const std::string j = render_json(r);
    const auto v = j.find("\"version\""), c = j.find("\"config\""), res = j.find("\"results\""), w = j.find("\"warnings\"");
    EXPECT_LT(v, c);
    EXPECT_LT(c, res);
    EXPECT_LT(res, w);
    EXPECT_NE(j.find("\"score\": \"undefined\""), std::string::npos);
    EXPECT_EQ(render_csv(r), "kind,name,direction,method,value,ud,ud_max\ndependency,bp,y-on-x,binned,undefined,0,0\n");
}

TEST(Commands, ComputeExample2FromCsv) {
    TempFile f("bpdep_e2.csv", example2_csv());
    RunConfig c;
    c.input = f.path();
    c.kind_x = c.kind_y = KindRequest::Discrete;
    c.format = OutputFormat::Csv;
    const auto r = run_config(c);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("dependency,bp,y-on-x,binned,1,1,1\n"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("dependency,bp,x-on-y,binned,0.666666666667,1,1.5\n"), std::string::npos) << r.out;
}

TEST(Commands, ConstantColumnGivesUndefinedToken) {
    TempFile f("bpdep_const.csv", "x,y\n0.1,2\n0.2,2\n0.3,2\n");
    RunConfig c;
    c.input = f.path();
    c.kind_y = KindRequest::Continuous;
    c.direction = DirectionRequest::YonX;
    const auto r = run_config(c);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"score\": \"undefined\""), std::string::npos);
    EXPECT_NE(r.out.find("is constant"), std::string::npos);
    c.command = Command::Compare;
    const auto cmp = run_config(c);
    EXPECT_NE(cmp.out.find("\"measure\": \"uncertainty-coefficient\",\n      \"direction\": \"y-on-x\",\n      \"value\": \"undefined\""),
              std::string::npos)
        << cmp.out;
}

TEST(Commands, NamedErrorsHaveDistinctExitCodes) {
    RunConfig c;
    c.input = "/nonexistent/file.csv";
    auto r = run_config(c);
    EXPECT_EQ(r.code, 3);
    EXPECT_NE(r.err.find("missing-file"), std::string::npos);

    TempFile f("bpdep_cols.csv", example2_csv());
    c.input = f.path();
    c.x = "nope";
    r = run_config(c);
    EXPECT_EQ(r.code, 4);
    EXPECT_NE(r.err.find("unknown-column"), std::string::npos);

    c.x = "outcome";
    c.method = Method::Kde;
    r = run_config(c);
    EXPECT_EQ(r.code, 5);
    EXPECT_NE(r.err.find("kind-conflict"), std::string::npos);

    RunConfig none;
    EXPECT_EQ(run_config(none).code, 2);
}

TEST(Commands, ReportsAreByteIdenticalAcrossRuns) {
    RunConfig c;
    c.generator = "noisy-uniform";
    c.n = 1000;
    c.method = Method::Kde;
    c.grid = 64;
    EXPECT_EQ(run_config(c).out, run_config(c).out);
    c.command = Command::Sweep;
    c.method = Method::Binned;
    c.values = "2,4,8,16";
    const auto a = run_config(c);
    EXPECT_EQ(a.out, run_config(c).out);
    EXPECT_NE(a.out.find("\"reference\": 0.620887"), std::string::npos) << a.out;
}

TEST(Commands, SweepCsvIsPlotReady) {
    RunConfig c;
    c.command = Command::Sweep;
    c.generator = "independent-uniform";
    c.values = "2,5,10";
    c.direction = DirectionRequest::YonX;
    c.format = OutputFormat::Csv;
    const auto r = run_config(c);
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "parameter,score");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        EXPECT_LT(std::stod(line.substr(line.find(',') + 1)), 0.1);
    }
    EXPECT_EQ(rows, 3);
}

TEST(Commands, SeedDrivesGeneratorAndConfigFile) {
    TempFile spec("bpdep_gen.txt", "id = random-joint\nn = 400\nrows = 2\ncols = 3\n");
    RunConfig c;
    c.generator_config = spec.path();
    c.seed = 5;
    const auto a = run_config(c);
    ASSERT_EQ(a.code, 0) << a.err;
    c.seed = 6;
    EXPECT_NE(a.out, run_config(c).out);
}

TEST(Commands, PropertiesAndDemo) {
    RunConfig c;
    c.command = Command::Properties;
    c.trials = 100;
    c.format = OutputFormat::Csv;
    const auto p = run_config(c);
    EXPECT_EQ(p.code, 0);
    EXPECT_EQ(std::count(p.out.begin(), p.out.end(), '\n'), 9);
    c.command = Command::Demo;
    const auto d = run_config(c);
    EXPECT_EQ(d.code, 0);
    EXPECT_NE(d.out.find("dependency,example1,x-on-y,quadrature,0.5,1,2"), std::string::npos) << d.out;
    EXPECT_NE(d.out.find("dependency,mixture-target-2,y-on-x,exact,0.5,"), std::string::npos);
}
