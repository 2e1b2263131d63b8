from fastmcp import FastMCP

mcp: FastMCP = FastMCP(
    name="sptri",
    instructions=(
        "Numerical lab for the triangular projection on Schatten p-classes, 0 < p <= 1. "
        "Computes Schatten quasi-norms, L^p quasi-norms of Dirichlet kernels, witness lower bounds "
        "and certified upper bounds for the triangular projection, and checks Hankel matrix inequalities."
    ),
    on_duplicate="error",
)
