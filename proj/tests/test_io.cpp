#include <gtest/gtest.h>

#include <dhsparse/io.hpp>

#include <cstdio>
#include <sstream>
#include <string>

namespace dhsparse {
namespace {

Hypergraph parse(const std::string& text) {
  std::istringstream in(text);
  return read_dhg(in);
}

std::string render(const Hypergraph& h) {
  std::ostringstream out;
  write_dhg(h, out);
  return out.str();
}

TEST(Dhg, ParsesHeaderAndEdges) {
  auto h = parse(
      "dhg 1 4\n"
      "2 0 1 1 2 1.5\n"
      "1 3 2 0 1 0.25\n");
  EXPECT_EQ(h.vertex_count(), 4u);
  ASSERT_EQ(h.size(), 2u);
  EXPECT_EQ(h.edges()[0].tail, (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(h.edges()[0].head, (std::vector<VertexId>{2}));
  EXPECT_EQ(h.edges()[0].weight, 1.5);
  EXPECT_EQ(h.edges()[1].tail, (std::vector<VertexId>{3}));
  EXPECT_EQ(h.edges()[1].head, (std::vector<VertexId>{0, 1}));
  EXPECT_EQ(h.edges()[1].weight, 0.25);
}

TEST(Dhg, IdsFollowLineOrder) {
  auto h = parse(
      "dhg 1 3\n"
      "1 2 1 0 1\n"
      "1 0 1 1 1\n"
      "1 1 1 2 1\n");
  for (EdgeId i = 0; i < 3; ++i) EXPECT_EQ(h.edges()[i].id, i);
}

TEST(Dhg, SkipsCommentsAndBlankLines) {
  auto h = parse(
      "# generated for the round-trip test\n"
      "\n"
      "dhg 1 3\n"
      "   \t  \n"
      "  # indented comment\n"
      "1 0 1 1 2\n"
      "\n");
  EXPECT_EQ(h.vertex_count(), 3u);
  EXPECT_EQ(h.size(), 1u);
  EXPECT_EQ(h.edges()[0].weight, 2.0);
}

TEST(Dhg, WriteParseWriteIsByteIdentical) {
  Hypergraph h(6, {{{0, 1}, {2}, 0.1},
                   {{3}, {4, 5}, 1.0 / 3.0},
                   {{2, 4}, {0}, 6.02214076e23},
                   {{5}, {1}, 1e-9},
                   {{1, 2, 3}, {4}, 7.0}});
  std::string first = render(h);
  std::istringstream in(first);
  std::string second = render(read_dhg(in));
  EXPECT_EQ(first, second);
}

TEST(Dhg, WeightsUseShortestRoundTripForm) {
  Hypergraph h(2, {{{0}, {1}, 0.1}, {{1}, {0}, 3.0}});
  EXPECT_EQ(render(h), "dhg 1 2\n1 0 1 1 0.1\n1 1 1 0 3\n");
}

TEST(Dhg, WriteEmitsCanonicalVertexOrder) {
  auto h = parse(
      "dhg 1 4\n"
      "2 3 1 2 0 2 0.5\n");
  EXPECT_EQ(render(h), "dhg 1 4\n2 1 3 2 0 2 0.5\n");
}

TEST(Dhg, MissingHeaderFails) {
  try {
    parse("");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
  EXPECT_THROW(parse("# only comments\n\n"), ParseError);
}

TEST(Dhg, BadHeaderFails) {
  EXPECT_THROW(parse("graph 1 4\n"), ParseError);
  EXPECT_THROW(parse("dhg 1\n"), ParseError);
  EXPECT_THROW(parse("dhg 1 4 extra\n"), ParseError);
}

TEST(Dhg, UnsupportedVersionFails) {
  try {
    parse("dhg 2 4\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("version"), std::string::npos);
  }
}

TEST(Dhg, MalformedEdgeReportsItsLine) {
  try {
    parse(
        "dhg 1 4\n"
        "# edge below is truncated\n"
        "2 0 1 1 2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(Dhg, TrailingTokensRejected) {
  EXPECT_THROW(parse("dhg 1 4\n1 0 1 1 1.0 9\n"), ParseError);
}

TEST(Dhg, NonNumericTokenRejected) {
  EXPECT_THROW(parse("dhg 1 4\n1 x 1 1 1.0\n"), ParseError);
  EXPECT_THROW(parse("dhg 1 4\n1 0 1 1 w\n"), ParseError);
}

TEST(Dhg, SemanticErrorsSurfaceAsParseErrors) {
  // Vertex out of range and non-positive weight are caught at construction.
  EXPECT_THROW(parse("dhg 1 2\n1 0 1 5 1.0\n"), ParseError);
  EXPECT_THROW(parse("dhg 1 2\n1 0 1 1 0\n"), ParseError);
  EXPECT_THROW(parse("dhg 1 2\n1 0 1 1 -2\n"), ParseError);
}

TEST(Dhg, FileHelpersRoundTrip) {
  std::string path = testing::TempDir() + "io_roundtrip.dhg";
  Hypergraph h(3, {{{0}, {1, 2}, 2.5}, {{1, 2}, {0}, 0.125}});
  write_dhg_file(h, path);
  Hypergraph back = read_dhg_file(path);
  EXPECT_EQ(render(h), render(back));
  std::remove(path.c_str());
}

TEST(Dhg, MissingFileFails) {
  EXPECT_THROW(read_dhg_file("/nonexistent/really/not-here.dhg"), std::runtime_error);
}

std::vector<UpdateGroup> parse_updates(const std::string& text) {
  std::istringstream in(text);
  return read_dhu(in);
}

TEST(Dhu, ParsesSinglesAndBatches) {
  auto groups = parse_updates(
      "# warm-up\n"
      "add 1 0 1 1 2.5\n"
      "del 7\n"
      "batch 3\n"
      "add 2 0 1 1 2 1\n"
      "del 0\n"
      "del 1\n"
      "add 1 2 1 0 4\n");
  ASSERT_EQ(groups.size(), 4u);

  EXPECT_FALSE(groups[0].is_batch);
  ASSERT_EQ(groups[0].ops.size(), 1u);
  EXPECT_EQ(groups[0].ops[0].kind, UpdateOp::Kind::Add);
  EXPECT_EQ(groups[0].ops[0].spec.weight, 2.5);

  EXPECT_FALSE(groups[1].is_batch);
  EXPECT_EQ(groups[1].ops[0].kind, UpdateOp::Kind::Del);
  EXPECT_EQ(groups[1].ops[0].id, 7u);

  EXPECT_TRUE(groups[2].is_batch);
  ASSERT_EQ(groups[2].ops.size(), 3u);
  EXPECT_EQ(groups[2].ops[0].kind, UpdateOp::Kind::Add);
  EXPECT_EQ(groups[2].ops[1].id, 0u);
  EXPECT_EQ(groups[2].ops[2].id, 1u);

  EXPECT_FALSE(groups[3].is_batch);
}

TEST(Dhu, EmptyBatchIsLegal) {
  auto groups = parse_updates("batch 0\ndel 3\n");
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_TRUE(groups[0].is_batch);
  EXPECT_TRUE(groups[0].ops.empty());
  EXPECT_FALSE(groups[1].is_batch);
}

TEST(Dhu, NestedBatchRejected) {
  try {
    parse_updates("batch 2\ndel 0\nbatch 1\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("nested"), std::string::npos);
  }
}

TEST(Dhu, TruncatedBatchRejected) {
  try {
    parse_updates("batch 3\ndel 0\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("2 ops missing"), std::string::npos);
  }
}

TEST(Dhu, UnknownVerbRejected) {
  try {
    parse_updates("frob 3\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("frob"), std::string::npos);
  }
}

TEST(Dhu, MalformedOpsRejected) {
  EXPECT_THROW(parse_updates("del\n"), ParseError);
  EXPECT_THROW(parse_updates("del 1 2\n"), ParseError);
  EXPECT_THROW(parse_updates("batch\n"), ParseError);
  EXPECT_THROW(parse_updates("batch two\n"), ParseError);
  EXPECT_THROW(parse_updates("add 1 0 1 1\n"), ParseError);
}

TEST(Dhu, WriteParseWriteIsByteIdentical) {
  std::vector<UpdateGroup> groups;
  groups.push_back({false, {UpdateOp{UpdateOp::Kind::Add, {{0, 2}, {1}, 0.3}, 0}}});
  groups.push_back({false, {UpdateOp{UpdateOp::Kind::Del, {}, 11}}});
  groups.push_back({true,
                    {UpdateOp{UpdateOp::Kind::Add, {{1}, {0}, 2.0}, 0},
                     UpdateOp{UpdateOp::Kind::Del, {}, 4}}});
  std::ostringstream first;
  write_dhu(groups, first);
  auto back = parse_updates(first.str());
  std::ostringstream second;
  write_dhu(back, second);
  EXPECT_EQ(first.str(), second.str());
  EXPECT_EQ(first.str(),
            "add 2 0 2 1 1 0.3\n"
            "del 11\n"
            "batch 2\n"
            "add 1 1 1 0 2\n"
            "del 4\n");
}

TEST(Dhu, FileHelperReadsStream) {
  std::string path = testing::TempDir() + "io_stream.dhu";
  {
    std::ofstream out(path);
    out << "add 1 0 1 1 1\nbatch 1\ndel 0\n";
  }
  auto groups = read_dhu_file(path);
  ASSERT_EQ(groups.size(), 2u);
  EXPECT_TRUE(groups[1].is_batch);
  std::remove(path.c_str());
  EXPECT_THROW(read_dhu_file(path), std::runtime_error);
}

}  // namespace
}  // namespace dhsparse
