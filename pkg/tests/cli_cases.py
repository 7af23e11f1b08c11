"""CLI invocations checked against tests/golden/<name>.out."""

CASES = {
    "op_normalize": (["op", "normalize", "d*x"], 0),
    "op_adjoint": (["op", "adjoint", "x*d"], 0),
    "op_fourier": (["op", "fourier", "x*d - 1/2 - 2*x^2", "--tau", "1"], 0),
    "op_fourier_neg": (["op", "fourier", "-d", "--tau", "-3"], 0),
    "op_inverse_fourier": (["op", "inverse-fourier", "-d", "--tau", "1"], 0),
    "op_bar": (["op", "bar", "x^2 + d"], 0),
    "op_homothety": (["op", "homothety", "x^2", "--tau", "2"], 0),
    "op_twist": (["op", "twist", "t^2", "--alpha", "1/2"], 0),
    "op_theta": (["op", "theta", "d"], 0),
    "op_infinity": (["op", "infinity", "t - 1/2 - 2*x^2"], 0),
    "polygon_json": (["polygon", "json", "t - 1/2 - 2*x^2"], 0),
    "polygon_slopes": (["polygon", "slopes", "d^2 + x"], 0),
    "polygon_katz": (["polygon", "katz", "t - 1/2 - 2*x^2"], 0),
    "polygon_show": (["polygon", "show", "t - 1/2 - 2*x^2"], 0),
    "local_companion": (["local", "companion", "t^2 - x", "--system", "d"], 0),
    "local_indicial": (["local", "indicial", "t^2 - x"], 0),
    "local_indicial_inf": (["local", "indicial", "t - 1/3", "--at", "inf"], 0),
    "local_exponents": (["local", "exponents", "t^2 - 2"], 0),
    "local_reduce": (["local", "reduce", "t - 1/2 - 2*x^2", "--prec", "6"], 0),
    "local_reduce_inf_irregular": (["local", "reduce", "t - 1/2 - 2*x^2", "--at", "inf"], 1),
    "local_frobenius": (["local", "frobenius", "t*(t - 1/2) - x", "--rho", "0", "--prec", "5"], 0),
    "local_frobenius_resonant": (["local", "frobenius", "t^2 - x", "--rho", "0"], 1),
    "laplace_c": (["laplace", "c", "--twist", '[["1/2"]]', "--i", "2"], 0),
    "laplace_c_neg": (["laplace", "c", "--twist", '[["1/2", 1], [0, "1/2"]]', "--i", "-2", "--tau", "2"], 0),
    "laplace_transform": (["laplace", "transform", '{"twist": [["1/2"]], "coeffs": {"1": [["1"]]}}'], 0),
    "laplace_check_cc": (["laplace", "check-cc", "--twist", '[["1/2"]]', "--range", "-2:2"], 0),
    "laplace_slope": (["laplace", "slope", "--twist", '[["1/2"]]', "--p", "3", "--horizon", "200"], 0),
    "laplace_slope_p_divides": (["laplace", "slope", "--twist", '[["1/2"]]', "--p", "2"], 1),
    "laplace_bad_twist": (["laplace", "c", "--twist", "[[0, 1], [2, 0]]"], 1),
    "padic_slope": (["padic", "slope", "--alpha", "1/2", "--p", "2", "--horizon", "100"], 0),
    "padic_euler_radius": (["padic", "euler-radius", "--alpha", "1/2", "--p", "2", "--lambda-r", "-1/2", "--horizon", "100"], 0),
    "padic_gevrey": (["padic", "gevrey", "[1, 2, 4, 8, 16]", "--s", "0"], 0),
    "check_e_quadratic": (["check-e", "t - 1/2 - 2*x^2", "--primes", "2,3", "--prec", "100", "--horizon", "100"], 0),
    "check_e_euler": (["check-e", "t - 1/2", "--prec", "30", "--horizon", "30"], 0),
    "parse_error": (["op", "normalize", "x +* d"], 2),
    "parse_error_json": (["op", "normalize", "{bad"], 2),
    "domain_error_zero": (["polygon", "json", "x - x"], 1),
    "missing_tau": (["op", "fourier", "x"], 1),
    "not_prime": (["padic", "slope", "--alpha", "1", "--p", "4"], 1),
}
