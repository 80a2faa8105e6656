"""Регулятор колонны.

- macro.py: макроскопические статистики по префиксу колонны, функции ψ
  и динамика внутреннего состояния ρ,
- controller.py: опорные значения дистанции и скорости, мезоскопический
  закон управления и насыщение ускорения.

Все функции чистые: без состояния, безопасны для параллельного вызова.
"""
