"""Доменная модель колонны.

Домен — это ядро проекта. Здесь нет интегратора, файлов и CLI.
Только понятия предметной области:
- состояния автомобилей, пар «лидер-ведомый» и колонны,
- равновесие и отклонение от него,
- параметры регулятора.
"""
