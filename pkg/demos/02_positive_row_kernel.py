# Positive row combinations of zero-row-sum matrices
# --------------------------------------------------
# Negative diagonal, positive off-diagonal, zero row sums: some strictly
# positive combination of the rows is zero. The solver rescales rows to
# diagonal -1, folds the last row into the others and recurses.

from fractions import Fraction as F

from fibral import positive_row_kernel, verify_kernel_hypotheses
from fibral.exact import vec_mat
from fibral.kernel import KernelHypothesisError, reduce_problem

w = [[-1, F(1, 3), F(2, 3)], [F(1, 2), -1, F(1, 2)], [F(1, 4), F(3, 4), -1]]
problem = verify_kernel_hypotheses(w)

smaller, scales = reduce_problem(problem)
print("reduced 2x2 block:", [[str(x) for x in row] for row in smaller.entries])

k = positive_row_kernel(problem)
print("weights:", [str(a) for a in k.weights], "integer form:", k.integer_weights)
print("a^T W =", [str(x) for x in vec_mat(list(k.weights), problem.matrix())])

try:
    verify_kernel_hypotheses([[-1, 1], [1, -2]])
except KernelHypothesisError as exc:
    print("rejected:", exc.violations)
