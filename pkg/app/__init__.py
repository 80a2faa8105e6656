"""Пакет симулятора мезоскопического управления колонной автомобилей.

Пакет app содержит весь код проекта:
- domain: состояния автомобилей, пар «лидер-ведомый» и параметры регулятора,
- control: макроскопические статистики и закон управления,
- dynamics: замкнутая система, интегратор и прогон сценария,
- certify: численная проверка сертификатов устойчивости (Ляпунов, ISS, M-матрица),
- harness: сценарии, метрики, свипы по размеру колонны и запись артефактов.

Цель структуры — отделить модель (домен, управление, динамику) от того,
как её запускают и сохраняют результаты (harness и CLI в main.py).
"""
