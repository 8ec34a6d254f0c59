"""Golden CLI invocations: name -> argv."""

CASES = {
    "parametrize_not_unirational": ["parametrize", "x'' - y'"],
    "parametrize_5_6_2": ["parametrize", "y' - x' - x"],
    "parametrize_5_6_3": ["parametrize", "x' + x + t*y' + (t+1)*y"],
    "parametrize_5_6_4": ["parametrize", "t*x' + t*x + y' + y"],
    "resultant_4_8": ["resultant", "x*u - u'' - 1", "y*u - u'' - 1", "--var", "u"],
    "proper_4_8": ["proper", "((u''+1)/u, (u''+1)/u)"],
    "proper_poly": ["proper", "(u', u + u')"],
    "implicitize_poly": ["implicitize", "(u', u + u')"],
    "implicitize_rational": ["implicitize", "(u'/u, (u + 1)/u)"],
    "invert": ["invert", "(u', u + u')"],
    "verify": ["verify", "x'^2 - 4*x*y^2", "(u^2, u')"],
    "mobius": ["mobius", "(u', u + u')", "0", "1", "1", "0"],
    "wronskian": ["wronskian", "1/t", "t"],
    "membership": ["membership", "x'' - y'", "x' - y"],
    "membership_absent": ["membership", "x'' - y'", "y' - x' - x"],
    "order_check": ["order-check", "y''*x + y'^2*y - y'*x'", "(u*u'', u')", "2", "1"],
    "gcld": ["gcld", "D + 1", "t*D + t + 1"],
    "gcrd": ["gcrd", "t*D + t", "D + 1"],
    "lcrm": ["lcrm", "t*D + t", "D + 1"],
    "ele": ["ele", "-D - 1", "D"],
    "renamed_parameter": ["parametrize", "y' - x' - x", "--var", "v"],
    "constant_field": ["parametrize", "y' - x' - x", "--field", "q"],
    "parse_error": ["parametrize", "x^(-1)"],
    "arity_error": ["gcld", "D"],
}
