"""Динамика замкнутой системы и её численное интегрирование.

Этот пакет содержит всё, что связано со временем:
- base.py: контракты (Protocol) правой части ОДУ и проекции состояния,
- integrator.py: классический шаг Рунге-Кутты 4-го порядка,
- inputs.py: внешние входы (расписание лидера, импульсы возмущения, ограничения),
- closed_loop.py: правая часть замкнутой системы колонны,
- simulation.py: прогон сценария и траектория.

Один прогон строго последовательный; параллелизм живёт уровнем выше (свипы).
"""
