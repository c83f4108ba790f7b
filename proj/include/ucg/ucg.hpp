#pragma once

#include "edge_kernels.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "io.hpp"
#include "kernel.hpp"
#include "oracle.hpp"
#include "pipeline.hpp"
#include "random.hpp"
#include "split_kernels.hpp"
#include "uced_branch.hpp"
#include "uced_dense.hpp"
#include "ucvd_kernel.hpp"
#include "ucvd_solver.hpp"
