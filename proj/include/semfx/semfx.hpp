#pragma once

#include "semfx/error.hpp"
#include "semfx/numbers.hpp"
#include "semfx/coefficient.hpp"
#include "semfx/bernstein.hpp"
#include "semfx/words.hpp"
#include "semfx/matrix.hpp"
#include "semfx/semiring.hpp"
#include "semfx/state.hpp"
#include "semfx/presentation.hpp"
#include "semfx/tensor.hpp"
#include "semfx/convexity.hpp"
#include "semfx/dist.hpp"
#include "semfx/coin.hpp"
#include "semfx/lang/ast.hpp"
#include "semfx/lang/parser.hpp"
#include "semfx/lang/eval.hpp"
#include "semfx/laws.hpp"
#include "semfx/generators.hpp"
