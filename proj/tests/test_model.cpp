#include "brstlab/model.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

using namespace brstlab;

namespace {

std::string wrap(const std::string& s0, const std::string& params = "") {
    return "model \"m\" action { S0 = " + s0 + "; }" + params;
}

// Random expression text over the grammar, with redundant parentheses sprinkled in.
std::string random_expr(std::mt19937& rng, int depth) {
    std::uniform_int_distribution<int> pick(0, 9);
    int k = depth <= 0 ? pick(rng) % 3 : pick(rng);
    switch (k) {
        case 0: return "M" + std::to_string(1 + pick(rng) % 4);
        case 1: return std::to_string(pick(rng)) + (pick(rng) < 3 ? "/" + std::to_string(1 + pick(rng)) : "");
        case 2: return "-" + std::to_string(1 + pick(rng));
        case 3:
        case 4: return random_expr(rng, depth - 1) + (pick(rng) < 5 ? " + " : " - ") + random_expr(rng, depth - 1);
        case 5:
        case 6: return random_expr(rng, depth - 1) + "*" + random_expr(rng, depth - 1);
        case 7: return "(" + random_expr(rng, depth - 1) + ")^" + std::to_string(pick(rng) % 4);
        default: return "(" + random_expr(rng, depth - 1) + ")";
    }
}

}  // namespace

TEST(ModelParser, AcceptsTheReferenceModel) {
    ModelFile m = parse_model(
        "model \"u2\" action { S0 = (M1^2+M2^2+M3^2)*M4 + M4^2; } params { alpha=[1,1,1]; beta=1; T=0; }");
    EXPECT_EQ(m.name, "u2");
    EXPECT_EQ(m.beta, Rational(1));
    EXPECT_EQ(m.s0.kind, Expr::Kind::sum);
    ASSERT_EQ(m.s0.children.size(), 2u);
    EXPECT_EQ(m.s0.children[0].kind, Expr::Kind::product);
    EXPECT_EQ(m.s0.children[0].children[0].kind, Expr::Kind::sum);
    ModelSpec spec = to_model_spec(m);
    FieldTable t = u2_field_table();
    SuperPoly r2 = t.gen("M1").pow(2) + t.gen("M2").pow(2) + t.gen("M3").pow(2);
    EXPECT_EQ(spec.s0(t), r2 * t.gen("M4") + t.gen("M4").pow(2));
}

TEST(ModelParser, DefaultsAndComments) {
    ModelFile m = parse_model("# header\nmodel \"x\"\naction { S0 = M4^2; } # trailing\n");
    EXPECT_EQ(m.alpha[0], Rational(1));
    EXPECT_EQ(m.beta, Rational(1));
    EXPECT_EQ(m.t, Expr::literal(Rational(0)));
    ModelFile p = parse_model(wrap("M4", " params { beta=-3/6; }"));
    EXPECT_EQ(p.beta, Rational(-1, 2));
}

TEST(ModelParser, SyntaxErrorsCarryPositionAndExpectation) {
    try {
        parse_model("model \"m\"\naction { S0 = M1 + ; }");
        FAIL() << "expected SyntaxError";
    } catch (const SyntaxError& e) {
        EXPECT_EQ(e.line, 2u);
        EXPECT_EQ(e.column, 20u);
        EXPECT_NE(e.expected.find("'('"), std::string::npos);
    }
    EXPECT_THROW(parse_model("model m action { S0 = M1; }"), SyntaxError);
    EXPECT_THROW(parse_model(wrap("M1", " params { beta=1 }")), SyntaxError);
    EXPECT_THROW(parse_model(wrap("M1", " params { T=0; beta=1; }")), SyntaxError);
    EXPECT_THROW(parse_model(wrap("M1 $ M2")), SyntaxError);
    EXPECT_THROW(parse_model("model \"m"), SyntaxError);
    EXPECT_THROW(parse_model(wrap("M1^-1")), SyntaxError);
}

TEST(ModelParser, SemanticErrors) {
    EXPECT_THROW(parse_model(wrap("C1*M1")), SemanticError);
    EXPECT_THROW(parse_model(wrap("X7")), SemanticError);
    EXPECT_THROW(parse_model(wrap("M4", " params { T=E; }")), SemanticError);
    EXPECT_THROW(parse_model(wrap("M4", " params { alpha=[1,0,1]; }")), SemanticError);
    EXPECT_THROW(parse_model(wrap("M4", " params { beta=0; }")), SemanticError);
    EXPECT_THROW(parse_model(wrap("1/0")), SemanticError);
    EXPECT_THROW(to_model_spec(parse_model(wrap("M1"))), SemanticError);
    EXPECT_THROW(to_model_spec(parse_model(wrap("M1^2 + M2^2"))), SemanticError);
}

TEST(ModelParser, InvariantActionsConvert) {
    FieldTable t = u2_field_table();
    ModelSpec s = to_model_spec(parse_model(wrap("(M1^2+M2^2+M3^2)^2 - 3*M4^3 + 1/2")));
    SuperPoly r2 = t.gen("M1").pow(2) + t.gen("M2").pow(2) + t.gen("M3").pow(2);
    EXPECT_EQ(s.s0(t), r2.pow(2) - t.gen("M4").pow(3) * Rational(3) + Rational(1, 2));
    ModelSpec d = to_model_spec(parse_model(default_model_text()));
    EXPECT_EQ(d.s0(t), default_model_spec().s0(t));
    EXPECT_TRUE(d.is_standard());
}

TEST(ModelRenderer, MinimalParentheses) {
    EXPECT_EQ(render_expr(parse_model(wrap("(M1+M2)*M3")).s0), "(M1 + M2)*M3");
    EXPECT_EQ(render_expr(parse_model(wrap("M1 - (M2 - M3)")).s0), "M1 - (M2 - M3)");
    EXPECT_EQ(render_expr(parse_model(wrap("(M1*M2)^2")).s0), "(M1*M2)^2");
    EXPECT_EQ(render_expr(parse_model(wrap("((M1))")).s0), "M1");
    EXPECT_EQ(render_expr(parse_model(wrap("M1*(M2*M3)")).s0), "M1*(M2*M3)");
}

TEST(ModelRenderer, RoundTripProperty) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 300; ++trial) {
        std::string text = wrap(random_expr(rng, 4), " params { alpha=[1,-2/3,5]; beta=7; T=" + random_expr(rng, 2) + "; }");
        ModelFile m = parse_model(text);
        ModelFile again = parse_model(render_model(m));
        EXPECT_EQ(m, again) << text << "\n" << render_model(m);
        EXPECT_EQ(render_model(again), render_model(m));
    }
}

TEST(ModelFiles, ShippedModelParses) {
    std::ifstream in(std::string(BRSTLAB_MODELS_DIR) + "/u2.bv");
    ASSERT_TRUE(in);
    std::stringstream ss;
    ss << in.rdbuf();
    ModelFile m = parse_model(ss.str());
    EXPECT_EQ(m.name, "u2");
    EXPECT_NO_THROW(to_model_spec(m));
}
