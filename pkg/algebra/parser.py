"""
Equation file parser and printer.

File format (UTF-8, line oriented):

    # comment
    indep x y
    unknown f g
    param b
    rule cos(h)^2 = 1 - sin(h)^2
    eq 2*x*f + 6*y*f + 4*x*g + 5*x

Expressions use integers, rationals p/q, declared names, d(f,x,y) for
derivatives of unknowns, name(args) for opaque applications, the operators
+ - * ^ and parentheses. Implicit multiplication is rejected.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple

import config
from algebra.expressions import (
    Atom,
    AtomKind,
    Expression,
    RewriteRule,
    VariableTable,
    apply_rules,
)
from errors import DerivativeError, EquationSyntaxError, RuleError, UndeclaredAtomError

_TOKEN_PATTERN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


@dataclass(frozen=True)
class Token:
    kind: str  # "int", "name", "op", "end"
    text: str
    column: int  # 1-based


def tokenize(text: str, line: Optional[int] = None, offset: int = 0) -> List[Token]:
    """Split an expression into tokens; `offset` shifts reported columns."""
    tokens = []
    position = 0
    while position < len(text):
        match = _TOKEN_PATTERN.match(text, position)
        if match is None or match.end() == position:
            break
        number, name, op = match.groups()
        start = match.start(match.lastindex) + 1 + offset if match.lastindex else 0
        if number is not None:
            tokens.append(Token("int", number, start))
        elif name is not None:
            tokens.append(Token("name", name, start))
        elif op is not None:
            if op not in "+-*^/(),":
                raise EquationSyntaxError(f"Unexpected character '{op}'", line, start)
            tokens.append(Token("op", op, start))
        position = match.end()
    tokens.append(Token("end", "", len(text) + 1 + offset))
    return tokens


class ExpressionParser:
    """Recursive descent parser for one expression against a VariableTable."""

    def __init__(self, table: VariableTable, text: str,
                 line: Optional[int] = None, offset: int = 0):
        self.table = table
        self.line = line
        self.tokens = tokenize(text, line, offset)
        self.index = 0

    def parse(self) -> Expression:
        expression = self._sum()
        token = self._peek()
        if token.kind != "end":
            self._fail(f"Unexpected '{token.text}'", token)
        return expression

    # -- helpers ---------------------------------------------------------

    def _peek(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _accept(self, op: str) -> bool:
        token = self._peek()
        if token.kind == "op" and token.text == op:
            self.index += 1
            return True
        return False

    def _expect(self, op: str) -> Token:
        token = self._peek()
        if token.kind != "op" or token.text != op:
            self._fail(f"Expected '{op}'", token)
        return self._advance()

    def _fail(self, message: str, token: Token, error=EquationSyntaxError):
        if token.kind == "end":
            message = f"{message} at end of expression"
        raise error(message, self.line, token.column)

    # -- grammar ---------------------------------------------------------

    def _sum(self) -> Expression:
        result = self._product()
        while True:
            if self._accept("+"):
                result = result + self._product()
            elif self._accept("-"):
                result = result - self._product()
            else:
                return result

    def _product(self) -> Expression:
        result = self._unary()
        while self._accept("*"):
            result = result * self._unary()
        token = self._peek()
        if token.kind in ("int", "name") or (token.kind == "op" and token.text == "("):
            self._fail("Implicit multiplication is not allowed; use '*'", token)
        return result

    def _unary(self) -> Expression:
        if self._accept("-"):
            return -self._unary()
        if self._accept("+"):
            return self._unary()
        return self._power()

    def _power(self) -> Expression:
        base = self._primary()
        if self._accept("^"):
            token = self._advance()
            if token.kind != "int":
                self._fail("Exponents must be nonnegative integers", token)
            return base ** int(token.text)
        return base

    def _primary(self) -> Expression:
        token = self._advance()
        if token.kind == "int":
            value = Fraction(int(token.text))
            if self._accept("/"):
                denominator = self._advance()
                if denominator.kind != "int":
                    self._fail("Division is only allowed between integer literals", denominator)
                if int(denominator.text) == 0:
                    self._fail("Zero denominator", denominator)
                value /= int(denominator.text)
            return Expression.constant(value)
        if token.kind == "name":
            if self._accept("("):
                return self._application(token)
            return self._name(token)
        if token.kind == "op" and token.text == "(":
            inner = self._sum()
            self._expect(")")
            return inner
        self._fail(f"Unexpected '{token.text}'", token)

    def _name(self, token: Token) -> Expression:
        kind = self.table.classify(token.text)
        if kind is None:
            self._fail(f"Undeclared name '{token.text}'", token, UndeclaredAtomError)
        return Expression.from_atom(Atom(kind, token.text))

    def _application(self, token: Token) -> Expression:
        if token.text == config.DERIVATIVE_FUNCTION:
            return self._derivative(token)
        if self.table.classify(token.text) is not None:
            self._fail(f"'{token.text}' is a declared variable, not a function", token)
        arguments = [self._sum()]
        while self._accept(","):
            arguments.append(self._sum())
        self._expect(")")
        return Expression.from_atom(Atom.application(token.text, arguments))

    def _derivative(self, token: Token) -> Expression:
        names = []
        while True:
            name = self._advance()
            if name.kind != "name":
                self._fail("Derivative arguments must be names", name, DerivativeError)
            names.append(name)
            if self._accept(")"):
                break
            self._expect(",")
        function, *variables = names
        if self.table.classify(function.text) != AtomKind.UNKNOWN:
            self._fail(f"Derivative of '{function.text}', which is not an unknown",
                       function, DerivativeError)
        if not variables:
            self._fail(f"Derivative of '{function.text}' has no variables",
                       function, DerivativeError)
        for variable in variables:
            if self.table.classify(variable.text) != AtomKind.INDEPENDENT:
                self._fail(f"'{variable.text}' is not an independent variable",
                           variable, DerivativeError)
        return Expression.from_atom(
            Atom.derivative(function.text, [variable.text for variable in variables])
        )


def parse_expression(text: str, table: VariableTable,
                     rules: Sequence[RewriteRule] = (),
                     line: Optional[int] = None, offset: int = 0) -> Expression:
    """Parse and normalize one expression; rules are applied to a fixpoint."""
    expression = ExpressionParser(table, text, line, offset).parse()
    return apply_rules(expression, rules)


def _parse_rule(text: str, table: VariableTable, line: int, offset: int) -> RewriteRule:
    if "=" not in text:
        raise RuleError("Rules need the form '<atom>^<int> = <expression>'", line, offset + 1)
    lhs_text, rhs_text = text.split("=", 1)
    lhs = parse_expression(lhs_text, table, line=line, offset=offset)
    rhs = parse_expression(rhs_text, table, line=line, offset=offset + len(lhs_text) + 1)
    if len(lhs) != 1:
        raise RuleError("Rule left-hand side must be a single atom power", line, offset + 1)
    term = lhs.terms[0]
    if term.coefficient != 1 or not term.kernel.is_one or len(term.parametric.items) != 1:
        raise RuleError("Rule left-hand side must be a parametric atom power", line, offset + 1)
    atom, exponent = term.parametric.items[0]
    try:
        return RewriteRule(atom, exponent, rhs)
    except RuleError as exc:
        raise RuleError(exc.message, line, offset + 1) from exc


def _check_rule_cycles(rules: Sequence[RewriteRule], lines: Sequence[int]):
    # atom -> atoms its rule can introduce
    graph = {rule.atom: {a for a in rule.rhs.atoms()} for rule in rules}
    for start, line in zip(rules, lines):
        stack, seen = [start.atom], set()
        while stack:
            current = stack.pop()
            for nxt in graph.get(current, ()):
                if nxt == start.atom:
                    raise RuleError(f"Rule set is cyclic through {start.atom}", line, 1)
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)


def _split_line(raw: str) -> Tuple[str, str, int]:
    """Return (keyword, remainder, 0-based column of remainder) for a stripped line."""
    body = raw.split(config.COMMENT_MARKER, 1)[0].rstrip()
    stripped = body.lstrip()
    indent = len(body) - len(stripped)
    keyword, _, rest = stripped.partition(" ")
    rest_offset = indent + len(keyword) + 1
    return keyword, rest, rest_offset


def parse_system(text: str, promote: Iterable[str] = (), use_rules: bool = True
                 ) -> Tuple[VariableTable, List[Expression], List[RewriteRule]]:
    """
    Parse equation file contents.

    Args:
        text: Equation file contents
        promote: Parameter names to treat as unknowns
        use_rules: Apply the rewrite rules to the equations (rules are parsed either way)

    Returns:
        Tuple of (variable table, normalized equations, rewrite rules)

    Raises:
        EquationSyntaxError (or a subclass) with line and column information.
        ExpressionError if a promoted name is not a declared parameter.
    """
    declarations = {config.KEYWORD_INDEPENDENT: [], config.KEYWORD_UNKNOWN: [],
                    config.KEYWORD_PARAMETER: []}
    bodies = []  # (keyword, text, line, offset)

    # Declarations are collected first so that they may appear anywhere.
    for line_number, raw in enumerate(text.splitlines(), start=1):
        keyword, rest, offset = _split_line(raw)
        if not keyword:
            continue
        if keyword in declarations:
            names = rest.split()
            if not names:
                raise EquationSyntaxError(f"'{keyword}' needs at least one name", line_number, 1)
            for name in names:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", name):
                    raise EquationSyntaxError(f"Invalid name '{name}'", line_number,
                                              raw.find(name) + 1)
            declarations[keyword].extend(names)
        elif keyword in (config.KEYWORD_RULE, config.KEYWORD_EQUATION):
            bodies.append((keyword, rest, line_number, offset))
        else:
            raise EquationSyntaxError(f"Unknown keyword '{keyword}'", line_number,
                                      raw.find(keyword) + 1)

    try:
        table = VariableTable(
            independents=tuple(declarations[config.KEYWORD_INDEPENDENT]),
            unknowns=tuple(declarations[config.KEYWORD_UNKNOWN]),
            parameters=tuple(declarations[config.KEYWORD_PARAMETER]),
        )
    except ValueError as exc:
        raise EquationSyntaxError(str(exc)) from exc
    if promote:
        table = table.promote(promote)

    rules: List[RewriteRule] = []
    rule_lines: List[int] = []
    for keyword, rest, line_number, offset in bodies:
        if keyword == config.KEYWORD_RULE:
            rules.append(_parse_rule(rest, table, line_number, offset))
            rule_lines.append(line_number)
    _check_rule_cycles(rules, rule_lines)

    equations = [
        parse_expression(rest, table, rules if use_rules else (), line_number, offset)
        for keyword, rest, line_number, offset in bodies
        if keyword == config.KEYWORD_EQUATION
    ]
    return table, equations, rules


def format_system(table: VariableTable, equations: Iterable[Expression],
                  rules: Iterable[RewriteRule] = (), header: Optional[str] = None) -> str:
    """Print a system in the equation file format; parse_system reads it back unchanged."""
    lines = []
    if header:
        lines.extend(f"{config.COMMENT_MARKER} {row}" for row in header.splitlines())
    for keyword, names in ((config.KEYWORD_INDEPENDENT, table.independents),
                           (config.KEYWORD_UNKNOWN, table.unknowns),
                           (config.KEYWORD_PARAMETER, table.parameters)):
        if names:
            lines.append(f"{keyword} {' '.join(names)}")
    lines.extend(f"{config.KEYWORD_RULE} {rule}" for rule in rules)
    lines.extend(f"{config.KEYWORD_EQUATION} {equation}" for equation in equations)
    return "\n".join(lines) + "\n" if lines else ""
