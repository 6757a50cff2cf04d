#ifndef SIZERAMSEY_SIZERAMSEY_HPP
#define SIZERAMSEY_SIZERAMSEY_HPP

#include "sizeramsey/errors.hpp"
#include "sizeramsey/rational.hpp"
#include "sizeramsey/rng.hpp"
#include "sizeramsey/graph.hpp"
#include "sizeramsey/subsets.hpp"
#include "sizeramsey/blowup.hpp"
#include "sizeramsey/edge_colouring.hpp"
#include "sizeramsey/embedding.hpp"
#include "sizeramsey/subgraph.hpp"
#include "sizeramsey/class_p.hpp"
#include "sizeramsey/sparsify.hpp"
#include "sizeramsey/paths.hpp"
#include "sizeramsey/colouring.hpp"
#include "sizeramsey/embedder.hpp"
#include "sizeramsey/json_io.hpp"
#include "sizeramsey/pipeline.hpp"

#endif  // SIZERAMSEY_SIZERAMSEY_HPP
